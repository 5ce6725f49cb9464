"""Operator-matrix serialization.

Binary layout (little-endian):

    bytes 0..15   magic "FOCKLAB-MAT" padded with five NULs
    u32           version (currently 1)
    u32           n (dimension)
    u32           N (truncation)
    f64           s_domain
    f64           s_codomain
    u8            convention code (0 paper-h, 1 bargmann-h, 2 fock)
    then          row-major complex128 entries (re, im) pairs

CSV layout: comment header lines carrying the same metadata, then
``row,col,re,im`` records printed with full round-trip precision.
"""
from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import FockLabError
from .hermite import Convention, index_count
from .transforms import OperatorMatrix

__all__ = ["MAGIC", "VERSION", "write_matrix", "read_matrix"]

MAGIC = b"FOCKLAB-MAT" + b"\x00" * 5
VERSION = 1

_CODE = {Convention.PAPER_H: 0, Convention.BARGMANN_H: 1, Convention.FOCK: 2}
_CONV = {v: k for k, v in _CODE.items()}
_HEADER = struct.Struct("<16sIIIddB")


def write_matrix(path: Path | str, M: OperatorMatrix, fmt: str = "binary") -> None:
    path = Path(path)
    if fmt == "binary":
        head = _HEADER.pack(MAGIC, VERSION, M.dim, M.truncation,
                            M.s_domain, M.s_codomain, _CODE[M.convention])
        body = np.ascontiguousarray(M.entries, dtype="<c16").tobytes()
        path.write_bytes(head + body)
    elif fmt == "csv":
        lines = [
            f"# focklab-mat version={VERSION} n={M.dim} N={M.truncation} "
            f"s_domain={M.s_domain!r} s_codomain={M.s_codomain!r} "
            f"convention={M.convention.value}",
            "row,col,re,im",
        ]
        e = M.entries
        for i in range(e.shape[0]):
            for j in range(e.shape[1]):
                lines.append(f"{i},{j},{float(e[i, j].real)!r},{float(e[i, j].imag)!r}")
        path.write_text("\n".join(lines) + "\n")
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")


def read_matrix(path: Path | str) -> OperatorMatrix:
    path = Path(path)
    blob = path.read_bytes()
    if blob[:16] == MAGIC:
        magic, version, n, N, sd, sc, code = _HEADER.unpack_from(blob, 0)
        if version != VERSION:
            raise FockLabError(f"unsupported matrix file version {version}")
        count = index_count(n, N)
        body = np.frombuffer(blob, dtype="<c16", offset=_HEADER.size)
        if body.size != count * count:
            raise FockLabError(
                f"matrix payload has {body.size} entries, expected {count * count}")
        return OperatorMatrix(N, n, body.reshape(count, count).astype(np.complex128),
                              _CONV[code], s_domain=sd, s_codomain=sc)
    # CSV fallback
    text = blob.decode()
    header = None
    for line in text.splitlines():
        if line.startswith("# focklab-mat"):
            header = dict(tok.split("=", 1) for tok in line[2:].split()[1:])
            break
    if header is None:
        raise FockLabError(f"{path} is neither a focklab binary nor CSV matrix")
    n, N = int(header["n"]), int(header["N"])
    count = index_count(n, N)
    ent = np.zeros((count, count), dtype=complex)
    for line in text.splitlines():
        if line.startswith("#") or line.startswith("row,"):
            continue
        i, j, re, im = line.split(",")
        ent[int(i), int(j)] = float(re) + 1j * float(im)
    return OperatorMatrix(N, n, ent, Convention(header["convention"]),
                          s_domain=float(header["s_domain"]),
                          s_codomain=float(header["s_codomain"]))
