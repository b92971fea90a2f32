"""Bit-level encoder and decoder driven by a codebook.

Code words are concatenated most-significant-bit first and padded with
zero bits to a byte boundary; the symbol count travels out of band (the
stream file header), so the code space itself carries no framing.  The
prefix property makes greedy decoding unambiguous.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Mapping

from .model import SpecError

_HEADER = struct.Struct("<Q")  # symbol count, 8 bytes little-endian


@dataclass(frozen=True)
class Bitstream:
    """A packed bit sequence: bit_count valid bits, then zero padding."""

    payload: bytes
    bit_count: int

    def __post_init__(self) -> None:
        if not self.bit_count <= 8 * len(self.payload) < self.bit_count + 8:
            raise SpecError(
                f"payload of {len(self.payload)} bytes cannot hold "
                f"{self.bit_count} bits"
            )

    def bits(self) -> str:
        """The valid bits as a 0/1 string (padding stripped)."""
        return "".join(format(b, "08b") for b in self.payload)[: self.bit_count]


def encode(codebook: Mapping[str, str], symbols: Iterable[str]) -> Bitstream:
    """Concatenate the code words of the given symbol ids."""
    parts = []
    for sym in symbols:
        code = codebook.get(sym)
        if code is None:
            raise SpecError(f"symbol {sym!r} is not in the codebook")
        parts.append(code)
    bits = "".join(parts)
    bit_count = len(bits)
    if bit_count % 8:
        bits += "0" * (8 - bit_count % 8)
    payload = bytes(int(bits[i : i + 8], 2) for i in range(0, len(bits), 8))
    return Bitstream(payload=payload, bit_count=bit_count)


def decode(
    codebook: Mapping[str, str], stream: Bitstream, count: int
) -> tuple[str, ...]:
    """Greedily parse exactly count symbols; trailing padding is ignored."""
    by_code = {code: sym for sym, code in codebook.items()}
    if len(by_code) != len(codebook):
        raise SpecError("codebook maps two symbols to the same code word")
    longest = max((len(c) for c in by_code), default=0)
    bits = stream.bits()
    out = []
    pos = 0
    for n in range(count):
        word = ""
        while word not in by_code:
            if len(word) >= longest:
                raise SpecError(f"no code word matches the stream at symbol {n + 1}")
            if pos >= len(bits):
                raise SpecError("bit stream ended inside a code word")
            word += bits[pos]
            pos += 1
        out.append(by_code[word])
    return tuple(out)


def write_stream(fp: BinaryIO, stream: Bitstream, count: int) -> None:
    """Stream file = 8-byte little-endian symbol count, then the payload."""
    fp.write(_HEADER.pack(count))
    fp.write(stream.payload)


def read_stream(fp: BinaryIO) -> tuple[Bitstream, int]:
    """Parse a stream file; the byte-padded payload keeps every stored bit."""
    header = fp.read(_HEADER.size)
    if len(header) != _HEADER.size:
        raise SpecError("stream file shorter than its 8-byte header")
    (count,) = _HEADER.unpack(header)
    payload = fp.read()
    return Bitstream(payload=payload, bit_count=8 * len(payload)), count
