"""
Sequence files written by `forddisc generate`.

bits:   ASCII '0'/'1', no separators, trailing newline.
packed: 16-byte header (b"FDBS", version byte, order byte, little-endian
        uint64 symbol count, two reserved zero bytes) followed by the
        symbols 8 per byte, most significant bit first, last byte
        zero-padded.
"""

import struct
from itertools import islice
from pathlib import Path
from typing import BinaryIO, Iterable, Tuple

import numpy as np

from forddisc.errors import InvalidArgumentError
from forddisc.words import BitWord

MAGIC = b"FDBS"
VERSION = 1
HEADER = struct.Struct("<4sBBQ2x")
CHUNK = 1 << 16  # multiple of 8, so only the final chunk is padded


def _chunks(symbols: Iterable[int]) -> Iterable[np.ndarray]:
    it = iter(symbols)
    while True:
        chunk = np.fromiter(islice(it, CHUNK), dtype=np.uint8)
        if not chunk.size:
            return
        yield chunk


def write_bits(symbols: Iterable[int], out: BinaryIO) -> int:
    """Write symbols as ASCII digits; returns the symbol count"""
    count = 0
    for chunk in _chunks(symbols):
        out.write((chunk + ord("0")).tobytes())
        count += chunk.size
    out.write(b"\n")
    return count


def write_packed(symbols: Iterable[int], order: int, count: int, out: BinaryIO) -> int:
    """Write the header and the packed payload; `count` must be the exact symbol count"""
    out.write(HEADER.pack(MAGIC, VERSION, order, count))
    written = 0
    for chunk in _chunks(symbols):
        out.write(np.packbits(chunk).tobytes())
        written += chunk.size
    if written != count:
        raise InvalidArgumentError(f"header announced {count} symbols, stream produced {written}")
    return written


def read_packed(path: Path) -> Tuple[int, BitWord]:
    """Read a packed sequence file back into its order and word"""
    data = Path(path).read_bytes()
    if len(data) < HEADER.size:
        raise InvalidArgumentError(f"{path} is too short for a packed header")
    magic, version, order, count = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise InvalidArgumentError(f"{path} is not a packed sequence file")
    if version != VERSION:
        raise InvalidArgumentError(f"unsupported packed version {version}")
    payload = np.frombuffer(data, dtype=np.uint8, offset=HEADER.size)
    if payload.size != (count + 7) // 8:
        raise InvalidArgumentError(f"{path} payload does not match {count} symbols")
    bits = np.unpackbits(payload, count=count)
    return order, BitWord(tuple(int(b) for b in bits))
