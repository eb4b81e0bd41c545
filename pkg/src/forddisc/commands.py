"""
Subcommand implementations behind the `forddisc` CLI.

Each command takes a RunConfig and writes its machine-readable output
(bits, packed bytes, CSV or JSON) to a file or the given stream. Errors are
raised as ForddiscError subclasses; the CLI maps them to exit codes.
"""

import csv
import json
import logging
from contextlib import contextmanager
from dataclasses import dataclass
from typing import IO, Any, Dict, Iterable, Iterator, List, Optional

from forddisc import blocks, counting, fileformat, scaling, sequences
from forddisc.errors import CapacityError, InvalidArgumentError, VerificationError
from forddisc.settings import Method, OutputFormat, RunConfig
from forddisc.suite import SECTIONS, VerificationSuite, corrupted_table_factory
from forddisc.words import PrefixTracker

logger = logging.getLogger(__name__)

DEFAULT_COUNTS_N_MAX = 20

BLOCK_COLUMNS = ["k", "length", "word_count", "skew", "max_signed", "min_signed"]


@dataclass(frozen=True)
class GenerateSummary:
    order: int
    length: int
    disc: int
    method: Method

    def __str__(self) -> str:
        return f"order={self.order} method={self.method.value} length={self.length} disc={self.disc}"


def _require(value: Optional[int], name: str) -> int:
    if value is None:
        raise InvalidArgumentError(f"--{name} is required")
    return value


def _csv_writer(out: IO[str]):
    return csv.writer(out, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)


def _write_json(data: Any, out: IO[str]):
    out.write(json.dumps(data, indent=2, default=str))
    out.write("\n")


@contextmanager
def _text_output(config: RunConfig, fallback: IO[str]) -> Iterator[IO[str]]:
    if config.output_path is None:
        yield fallback
        return
    with open(config.output_path, "w", encoding="utf-8", newline="") as f:
        yield f


def _tracked(symbols: Iterable[int], tracker: PrefixTracker) -> Iterator[int]:
    for symbol in symbols:
        tracker.feed(symbol)
        yield symbol


# -- generate ------------------------------------------------------------------


def cmd_generate(config: RunConfig, out: IO[bytes]) -> GenerateSummary:
    """Write the least de Bruijn sequence of the requested order"""
    n = _require(config.order, "order")
    settings = config.settings
    if n < 1:
        raise InvalidArgumentError(f"order must be at least 1, got {n}")
    if config.output_format not in (OutputFormat.BITS, OutputFormat.PACKED):
        raise InvalidArgumentError(f"generate writes bits or packed, not {config.output_format.value}")

    if config.method is Method.GREEDY:
        symbols: Iterable[int] = sequences.greedy_prefer_zero(n, settings).symbols
    else:
        if n > settings.stream_max_order:
            raise CapacityError(f"streaming is capped at order {settings.stream_max_order}, got {n}")
        symbols = sequences.fkm_stream(n)

    tracker = PrefixTracker()
    stream = _tracked(symbols, tracker)
    logger.info("Generating order %d with %s", n, config.method.value)

    def write(target: IO[bytes]) -> int:
        if config.output_format is OutputFormat.PACKED:
            return fileformat.write_packed(stream, n, 1 << n, target)
        return fileformat.write_bits(stream, target)

    if config.output_path is None:
        count = write(out)
    else:
        with open(config.output_path, "wb") as f:
            count = write(f)
    return GenerateSummary(order=n, length=count, disc=tracker.report().disc, method=config.method)


# -- analyze -------------------------------------------------------------------


def _block_rows(n: int, reports: List[blocks.BlockReport], check: bool) -> List[Dict[str, Any]]:
    rows = []
    for block in reports:
        row = {column: getattr(block, column) for column in BLOCK_COLUMNS}
        if check:
            verdict = blocks.proposition_verdict(n, block)
            row["proposition"] = "na" if verdict is None else ("pass" if verdict else "fail")
        rows.append(row)
    return rows


def _emit_rows(rows: List[Dict[str, Any]], columns: List[str], config: RunConfig, out: IO[str]):
    with _text_output(config, out) as target:
        if config.output_format is OutputFormat.JSON:
            _write_json(rows, target)
            return
        writer = _csv_writer(target)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([row[column] for column in columns])


def cmd_analyze(config: RunConfig, out: IO[str]):
    """Block table (default), blockwise discrepancy or composite correction for one order"""
    n = _require(config.order, "order")
    if config.output_format not in (OutputFormat.CSV, OutputFormat.JSON):
        raise InvalidArgumentError(f"analyze writes csv or json, not {config.output_format.value}")

    if config.has("composite"):
        correction = blocks.composite_correction(n, config.settings)
        row = {
            "n": n,
            "actual_symbols": correction.actual_symbols,
            "divisor_bound": correction.divisor_bound,
            "square_bound": f"{correction.square_bound:.6g}",
            "holds": "pass" if correction.holds else "fail",
        }
        _emit_rows([row], list(row), config, out)
        return

    if not blocks.is_prime(n):
        raise InvalidArgumentError(
            f"block decomposition needs a prime order, got {n}; use `forddisc analyze --composite`"
        )
    decomposition = blocks.decompose(n, config.settings)

    if config.has("disc"):
        result = blocks.disc_blockwise(n, config.settings, decomposition)
        row = {
            "n": n,
            "disc": result.exact.disc,
            "position": result.position,
            "max_signed": result.exact.max_signed,
            "min_signed": result.exact.min_signed,
            "paper_bound": result.paper_bound,
        }
        _emit_rows([row], list(row), config, out)
        return

    check = config.has("check")
    columns = BLOCK_COLUMNS + (["proposition"] if check else [])
    _emit_rows(_block_rows(n, decomposition, check), columns, config, out)
    if check and n >= 11:
        report = blocks.proposition_check(n, config.settings, decomposition)
        if not report.passed:
            raise VerificationError(report)


# -- counts --------------------------------------------------------------------


def cmd_counts(config: RunConfig, out: IO[str]):
    """alpha_k and beta_k up to n_max, or the dominant root with --rho"""
    k = _require(config.k, "k")
    with _text_output(config, out) as target:
        writer = _csv_writer(target)
        if config.has("rho"):
            root = counting.rho(k, config.settings.root_tolerance)
            writer.writerow(["k", "rho", "residual"])
            writer.writerow([k, f"{root.approx:.6f}", f"{float(root.residual):.3e}"])
            return
        n_max = DEFAULT_COUNTS_N_MAX if config.n_max is None else config.n_max
        table = counting.build_table(k, n_max)
        writer.writerow(["k", "n", "a", "b"])
        for n in range(n_max + 1):
            writer.writerow([k, n, table.a[n], table.b[n]])


# -- verify --------------------------------------------------------------------


def cmd_verify(config: RunConfig, out: IO[str]):
    """Run the selected verification sections and write their reports as JSON"""
    sections = [name for name in SECTIONS if config.has(name)]
    factory = corrupted_table_factory if config.has("inject_fault") else counting.build_table
    if config.has("inject_fault"):
        logger.warning("Running with a deliberately corrupted count table")
    suite = VerificationSuite(config.settings, table_factory=factory)
    result = suite.run(sections or None, k=config.k, n_max=config.n_max)
    with _text_output(config, out) as target:
        _write_json(result.to_list(), target)
    failure = result.first_failure()
    if failure is not None:
        raise VerificationError(failure)
    return result


# -- scaling -------------------------------------------------------------------


def cmd_scaling(config: RunConfig, out: IO[str]) -> List[scaling.ScalingRow]:
    """disc, position and the normalized ratio for every order in the range"""
    n_min = _require(config.n_min, "min")
    n_max = _require(config.n_max, "max")
    rows = scaling.scaling_sweep(n_min, n_max, threads=config.workers, settings=config.settings)
    with _text_output(config, out) as target:
        writer = _csv_writer(target)
        writer.writerow(["n", "disc", "position", "ratio"])
        for row in rows:
            writer.writerow([row.n, row.disc, row.position, format(row.ratio, ".6g")])
    summary = scaling.summarize_sweep(rows)
    logger.info("ratio range %.6g..%.6g (spread %.4g)", summary.min_ratio, summary.max_ratio, summary.spread)
    return rows
