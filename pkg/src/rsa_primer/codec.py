"""Turn bytes into numeric blocks smaller than the modulus, and back.

RSA encrypts integers modulo n, so longer messages must be split into
blocks each strictly less than n.  Two codecs are provided:

* ``toy-ascii``: one block per character, the block value being the ASCII
  code (0..127).  Matches the classic worked example where "Tue 7PM"
  becomes 084 117 101 032 055 080 077.
* ``chunked``: general bytes packed base-256, ``chunk_bytes`` per block
  with the final partial chunk carrying a one-byte length prefix so the
  inverse needs no external length metadata.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BlockOutOfRange,
    MalformedBlock,
    ModulusTooSmallForCodec,
    NonAsciiByte,
)

__all__ = [
    "CODEC_TOY_ASCII",
    "CODEC_CHUNKED",
    "BlockSeq",
    "chunk_size_for",
    "decimal_digits",
    "encode_toy_ascii",
    "decode_toy_ascii",
    "encode_chunked",
    "decode_chunked",
    "format_cipher_blocks",
    "format_plain_blocks",
]

CODEC_TOY_ASCII = "toy-ascii"
CODEC_CHUNKED = "chunked"


@dataclass(frozen=True)
class BlockSeq:
    """An ordered run of message or cipher blocks plus codec bookkeeping.

    ``n_digits`` is the decimal digit count of the modulus and sets the
    zero-pad width when rendering cipher text.  ``chunk_bytes`` is the
    payload width of the chunked codec (None for toy-ascii).
    """

    blocks: tuple[int, ...]
    codec_id: str
    n_digits: int
    chunk_bytes: int | None = None


def decimal_digits(n: int) -> int:
    return len(str(n))


def chunk_size_for(n: int) -> int:
    """Largest k with 256**k <= n: the bytes that always fit in one block."""
    if n < 256:
        raise ModulusTooSmallForCodec(f"chunked codec needs n >= 256, got {n}")
    k = 1
    while 256 ** (k + 1) <= n:
        k += 1
    return k


def encode_toy_ascii(text: bytes, n: int) -> BlockSeq:
    """One block per ASCII character; requires n > 999 so blocks fit."""
    if n <= 999:
        raise ModulusTooSmallForCodec(f"toy-ascii codec needs n > 999, got {n}")
    for b in text:
        if b >= 128:
            raise NonAsciiByte(f"byte 0x{b:02x} is not ASCII")
    return BlockSeq(tuple(text), CODEC_TOY_ASCII, decimal_digits(n))


def decode_toy_ascii(bs: BlockSeq) -> bytes:
    if bs.codec_id != CODEC_TOY_ASCII:
        raise ValueError(f"expected a toy-ascii block sequence, got {bs.codec_id}")
    for b in bs.blocks:
        if b >= 128:
            raise BlockOutOfRange(f"block {b} is not an ASCII code")
    return bytes(bs.blocks)


def encode_chunked(data: bytes, n: int) -> BlockSeq:
    """Pack bytes into base-256 blocks of ``chunk_size_for(n)`` bytes each.

    Full chunks become one block apiece; the remainder (possibly empty)
    always travels in a final block framed as [length byte][bytes], which
    stays below 256**k and therefore below n.  Empty input encodes to an
    empty sequence.
    """
    k = chunk_size_for(n)
    blocks: list[int] = []
    if data:
        full = len(data) // k
        for i in range(full):
            blocks.append(int.from_bytes(data[i * k : (i + 1) * k], "big"))
        tail = data[full * k :]
        blocks.append(int.from_bytes(bytes([len(tail)]) + tail, "big"))
    return BlockSeq(tuple(blocks), CODEC_CHUNKED, decimal_digits(n), k)


def decode_chunked(bs: BlockSeq) -> bytes:
    """Exact inverse of :func:`encode_chunked`."""
    if bs.codec_id != CODEC_CHUNKED:
        raise ValueError(f"expected a chunked block sequence, got {bs.codec_id}")
    if bs.chunk_bytes is None:
        raise MalformedBlock("chunked block sequence is missing its chunk size")
    k = bs.chunk_bytes
    if not bs.blocks:
        return b""
    out = bytearray()
    for v in bs.blocks[:-1]:
        try:
            out += v.to_bytes(k, "big")
        except OverflowError:
            raise MalformedBlock(f"block {v} exceeds the {k}-byte chunk frame") from None
    tail_value = bs.blocks[-1]
    if tail_value == 0:
        return bytes(out)
    field = tail_value.to_bytes((tail_value.bit_length() + 7) // 8, "big")
    length = field[0]
    if length >= k or len(field) != length + 1:
        raise MalformedBlock(f"final block {tail_value} has inconsistent framing")
    out += field[1:]
    return bytes(out)


def format_cipher_blocks(bs: BlockSeq) -> str:
    """Blocks in decimal, zero-padded to the modulus digit count, spaced."""
    return " ".join(str(b).zfill(bs.n_digits) for b in bs.blocks)


def format_plain_blocks(bs: BlockSeq) -> str:
    """Display form of toy-ascii message blocks: 3-digit zero-padded codes."""
    if bs.codec_id != CODEC_TOY_ASCII:
        raise ValueError(f"expected a toy-ascii block sequence, got {bs.codec_id}")
    return " ".join(str(b).zfill(3) for b in bs.blocks)
