"""
High-level verification runner: groups the individual checks into sections,
runs the selected ones and collects their reports.
"""

import logging
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional

from forddisc import blocks, counting, oracle, sequences
from forddisc.counting import CountTable, build_table
from forddisc.errors import InvalidArgumentError
from forddisc.reports import CheckReport
from forddisc.settings import Settings
from forddisc.words import BitWord, discrepancy

logger = logging.getLogger(__name__)

SECTIONS = ("construction", "lemmas", "bounds", "roots", "blocks", "oracles")

TableFactory = Callable[[int, int], CountTable]


def corrupted_table_factory(k: int, n_max: int) -> CountTable:
    """A table whose alpha_k(k+1) entry is off by one, for fault injection"""
    table = build_table(k, n_max)
    a = list(table.a)
    a[min(k + 1, len(a) - 1)] += 1
    return replace(table, a=tuple(a))


@dataclass
class VerificationResult:
    reports: List[CheckReport] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(report.passed for report in self.reports)

    def first_failure(self) -> Optional[CheckReport]:
        for report in self.reports:
            if not report.passed:
                return report
        return None

    def to_list(self) -> List[Dict]:
        return [report.to_dict() for report in self.reports]


class VerificationSuite:
    """Runs the scoped claims over the grid configured in Settings"""

    def __init__(self, settings: Optional[Settings] = None, table_factory: TableFactory = build_table):
        self.settings = settings or Settings.get_defaults()
        self.grid = self.settings.grid
        self.table_factory = table_factory

    def run(self, sections: Optional[Iterable[str]] = None, k: Optional[int] = None,
            n_max: Optional[int] = None) -> VerificationResult:
        """Run the named sections (all by default); `k` and `n_max` narrow the lemma section"""
        selected = list(sections) if sections else list(SECTIONS)
        result = VerificationResult()
        for name in selected:
            if name not in SECTIONS:
                raise InvalidArgumentError(f"unknown verification section {name!r}")
            logger.info("Running %s checks", name)
            if name == "lemmas":
                reports = self.run_lemmas(k=k, n_max=n_max)
            else:
                reports = getattr(self, f"run_{name}")()
            result.reports.extend(reports)
            for report in reports:
                if not report.passed:
                    logger.error("%s failed: %s", report.claim, report.counterexample)
        return result

    # -- sections --------------------------------------------------------------

    def run_construction(self) -> List[CheckReport]:
        report = CheckReport(claim="construction", range={"n": [1, self.grid.construction_n_max]})
        for n in range(1, self.grid.construction_n_max + 1):
            report.checked += 1
            streamed = BitWord(tuple(sequences.fkm_stream(n)))
            greedy = sequences.greedy_prefer_zero(n, self.settings)
            if streamed != greedy:
                report.record_failure(n=n, reason="fkm and greedy differ")
                break
            if not sequences.verify_debruijn(streamed, n):
                report.record_failure(n=n, reason="not a de Bruijn word")
                break
            if discrepancy(streamed).min_signed < 0:
                report.record_failure(n=n, reason="negative prefix sum")
                break
        return [report]

    def run_lemmas(self, k: Optional[int] = None, n_max: Optional[int] = None) -> List[CheckReport]:
        g = self.grid
        if n_max is not None and n_max < 1:
            raise InvalidArgumentError(f"n_max must be at least 1, got {n_max}")
        if k is not None:
            ks = [k]
        else:
            ks = list(range(g.lemma_k_min, g.lemma_k_max + 1))
        lemma_n = g.lemma_n_max if n_max is None else n_max
        lemma5_n = g.lemma5_n_max if n_max is None else n_max
        reports = []
        if k is None:
            reports.append(counting.check_endpoints(2, 64))
        for kk in ks:
            table = self.table_factory(kk, max(lemma_n, lemma5_n))
            if kk >= 3:
                reports.append(counting.check_lemma2(kk, lemma_n, table))
                reports.append(counting.check_eq1(kk, lemma_n, table))
            reports.append(counting.check_cor3(kk, lemma_n, table))
            reports.append(counting.check_lemma4(
                kk, lemma_n, self.settings.lemma4_slack, self.settings.root_tolerance, table
            ))
            if kk >= 4:
                reports.append(counting.check_lemma5(kk, lemma5_n, table))
        return reports

    def run_bounds(self) -> List[CheckReport]:
        g = self.grid
        return [
            counting.check_janson(g.bound_k_min, g.bound_k_max, g.bound_m_max),
            counting.check_union(g.bound_k_min, g.bound_k_max, g.bound_m_max),
        ]

    def run_roots(self) -> List[CheckReport]:
        tol = self.settings.root_tolerance
        reports = [counting.check_roots(2, self.grid.root_k_max, tol)]
        limit = CheckReport(claim="ratio_limit", range={"k": [2, 8], "n": [200, 201]})
        for kk in range(2, 9):
            table = build_table(kk, 201)
            gap = abs(Fraction(table.a[201], table.a[200]) - counting.rho(kk, tol).value)
            limit.checked += 1
            if gap >= Fraction(1, 10 ** 6):
                limit.record_failure(k=kk, gap=float(gap))
        reports.append(limit)
        return reports

    def run_blocks(self) -> List[CheckReport]:
        g = self.grid
        reports = []
        reassembly = CheckReport(claim="reassembly", range={"n": g.block_primes})
        identity = CheckReport(claim="blockwise", range={"n": g.block_primes})
        weighted = CheckReport(claim="weighted_skew", range={"n": [5, g.weighted_n_max]})
        for n in g.block_primes:
            decomposition = blocks.decompose(n, self.settings, keep_words=n <= self.settings.lyndon_max_order)
            sequence = BitWord(tuple(sequences.fkm_stream(n)))
            streamed = discrepancy(sequence)
            if decomposition[0].word is not None:
                reassembly.checked += 1
                body = sum((block.word for block in decomposition), BitWord((0,)))
                if body + BitWord((1,)) != sequence:
                    reassembly.record_failure(n=n)
            blockwise = blocks.disc_blockwise(n, self.settings, decomposition)
            identity.checked += 1
            if blockwise.exact != streamed:
                identity.record_failure(n=n, blockwise=blockwise.exact.disc, streamed=streamed.disc)
            elif blockwise.paper_bound < blockwise.exact.disc:
                identity.record_failure(n=n, paper_bound=blockwise.paper_bound, exact=blockwise.exact.disc)
            elif min(blockwise.boundary_sums) < 0:
                identity.record_failure(n=n, boundary_sums=blockwise.boundary_sums)
            reports.append(blocks.block_size_check(n, self.settings, decomposition))
            if n >= 11:
                reports.append(blocks.proposition_check(n, self.settings, decomposition))
            if n <= g.weighted_n_max:
                for block in decomposition:
                    if 4 <= block.k <= n - 3:
                        weighted.checked += 1
                        value = blocks.block_skew_weighted(n, block.k, self.settings)
                        if value != block.skew:
                            weighted.record_failure(n=n, k=block.k, weighted=str(value), streamed=block.skew)
        reports[:0] = [reassembly, identity, weighted]
        return reports

    def run_oracles(self) -> List[CheckReport]:
        g = self.grid
        cfg = self.settings.oracle
        tables = CheckReport(claim="oracle_tables", range={"k": [2, g.oracle_k_max], "m": [0, g.oracle_m_max]})
        for kk in range(2, g.oracle_k_max + 1):
            table = self.table_factory(kk, g.oracle_m_max)
            for m in range(g.oracle_m_max + 1):
                tables.checked += 1
                expected = (oracle.alpha_brute(kk, m, cfg), oracle.beta_brute(kk, m, cfg))
                if (table.a[m], table.b[m]) != expected:
                    tables.record_failure(k=kk, m=m, table=[table.a[m], table.b[m]], brute=list(expected))
                    break

        debruijn = CheckReport(claim="oracle_debruijn", range={"n": [1, cfg.max_debruijn_order]})
        for n in range(1, cfg.max_debruijn_order + 1):
            debruijn.checked += 1
            count = oracle.count_debruijn_exhaustive(n, cfg)
            if count != 2 ** (2 ** (n - 1) - n):
                debruijn.record_failure(n=n, count=count)
            elif oracle.least_debruijn_exhaustive(n, cfg) != BitWord(tuple(sequences.fkm_stream(n))):
                debruijn.record_failure(n=n, reason="least de Bruijn word differs from the FKM stream")

        ell = CheckReport(claim="oracle_blocks", range={"n": [p for p in g.block_primes if p <= cfg.max_ell_order]})
        for n in ell.range["n"]:
            for k, word in blocks.block_words(n, self.settings).items():
                ell.checked += 1
                if oracle.ell_brute(n, k, cfg) != word:
                    ell.record_failure(n=n, k=k)

        disc = CheckReport(claim="oracle_disc", range={"words": 200, "max_length": 1 << 12})
        rng = random.Random(20240101)
        for _ in range(200):
            word = BitWord(tuple(rng.getrandbits(1) for _ in range(rng.randint(1, 1 << 12))))
            disc.checked += 1
            if oracle.disc_brute(word) != discrepancy(word).disc:
                disc.record_failure(word=str(word))
                break
        return [tables, debruijn, ell, disc]
