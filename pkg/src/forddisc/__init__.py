"""forddisc - the lexicographically least binary de Bruijn sequence and its discrepancy

This package constructs the sequence by two independent methods, splits it
into blocks by leading zero run, and checks the counting recurrences and
inequalities that bound its discrepancy with exact integer arithmetic.
"""

__version__ = "0.1.0"
version = __version__  # pylint: disable=invalid-name
