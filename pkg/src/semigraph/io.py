"""Matrix Market (coordinate) text and the ``LAGK`` binary container.

Matrix Market files carry 1-based indices.  Fields ``pattern``, ``integer``
and ``real`` and symmetries ``general`` and ``symmetric`` are accepted;
anything else is rejected with the offending token.  The writer adds a
``%%GraphBLAS type <DOMAIN>`` comment so that BOOL and UINT64 matrices read
back in their own domain.

Binary layout, little-endian::

    b"LAGK"  u32 version=1  u8 domain tag  u64 nrows  u64 ncols  u64 nvals
    i64 row_ptr[nrows+1]  i64 col_idx[nvals]  values[nvals]

Values are stored raw in the domain's dtype (BOOL as one byte).
"""

from __future__ import annotations

import io
import os
import struct
from typing import BinaryIO, TextIO, Union

import numpy as np

from .core import BOOL, FP64, INT64, SparseMatrix, ValueDomain, build_matrix
from .errors import (BadMagic, DuplicateEntry, IndexOutOfBounds, IoFailure, ParseError,
                     TruncatedStream, UnsupportedVersion)

PathOrText = Union[str, os.PathLike, TextIO]
PathOrBytes = Union[str, os.PathLike, BinaryIO]

MAGIC = b"LAGK"
VERSION = 1
_HEADER = struct.Struct("<4sIBQQQ")

_FIELD_DOMAIN = {"pattern": BOOL, "integer": INT64, "real": FP64}


def _open_text(src, mode):
    if isinstance(src, (str, os.PathLike)):
        try:
            return open(src, mode, encoding="utf-8"), True
        except OSError as exc:
            raise IoFailure(f"cannot open {os.fspath(src)}: {exc.strerror}") from exc
    return src, False


def _parse_banner(line: str):
    tokens = line.split()
    if len(tokens) != 5 or tokens[0].lower() != "%%matrixmarket":
        raise ParseError("expected banner '%%MatrixMarket matrix coordinate <field> <symmetry>'", 1)
    obj, fmt, field, symmetry = (t.lower() for t in tokens[1:])
    if obj != "matrix":
        raise ParseError(f"unsupported object {tokens[1]!r}", 1)
    if fmt != "coordinate":
        raise ParseError(f"unsupported format {tokens[2]!r}", 1)
    if field not in _FIELD_DOMAIN:
        raise ParseError(f"unsupported field {tokens[3]!r}", 1)
    if symmetry not in ("general", "symmetric"):
        raise ParseError(f"unsupported symmetry {tokens[4]!r}", 1)
    return field, symmetry


def mm_read(src: PathOrText) -> SparseMatrix:
    """Read a coordinate Matrix Market matrix into a 0-based CSR matrix."""
    fh, owned = _open_text(src, "r")
    try:
        return _mm_read(fh)
    finally:
        if owned:
            fh.close()


def _mm_read(fh: TextIO) -> SparseMatrix:
    lines = iter(enumerate(fh, start=1))
    try:
        _, banner = next(lines)
    except StopIteration:
        raise ParseError("empty stream", 1) from None
    field, symmetry = _parse_banner(banner)
    domain = _FIELD_DOMAIN[field]

    size = None
    for lineno, line in lines:
        s = line.strip()
        if s.startswith("%"):
            tokens = s.split()
            if len(tokens) == 3 and tokens[0] == "%%GraphBLAS" and tokens[1] == "type":
                try:
                    domain = ValueDomain[tokens[2].upper()]
                except KeyError:
                    raise ParseError(f"unknown GraphBLAS type {tokens[2]!r}", lineno) from None
            continue
        if not s:
            continue
        size = (lineno, s.split())
        break
    if size is None:
        raise ParseError("missing size line", None)
    lineno, tokens = size
    try:
        nrows, ncols, nnz = (int(t) for t in tokens)
    except ValueError:
        raise ParseError(f"bad size line {' '.join(tokens)!r}", lineno) from None
    if nrows < 0 or ncols < 0 or nnz < 0:
        raise ParseError("negative size", lineno)
    if symmetry == "symmetric" and nrows != ncols:
        raise ParseError("symmetric matrix must be square", lineno)

    want = 2 if field == "pattern" else 3
    rows = np.empty(nnz, dtype=np.int64)
    cols = np.empty(nnz, dtype=np.int64)
    vals = []
    parse = float if domain is FP64 else int
    count = 0
    for lineno, line in lines:
        s = line.strip()
        if not s or s.startswith("%"):
            continue
        if count == nnz:
            raise ParseError("more entries than the size line declares", lineno)
        tokens = s.split()
        if len(tokens) != want:
            raise ParseError(f"expected {want} fields, got {len(tokens)}", lineno)
        try:
            i, j = int(tokens[0]), int(tokens[1])
            x = parse(tokens[2]) if want == 3 else True
        except ValueError:
            raise ParseError(f"cannot parse entry {s!r}", lineno) from None
        if not (1 <= i <= nrows and 1 <= j <= ncols):
            raise IndexOutOfBounds(f"line {lineno}: entry ({i}, {j}) outside {nrows} x {ncols}")
        rows[count], cols[count] = i - 1, j - 1
        vals.append(x)
        count += 1
    if count != nnz:
        raise ParseError(f"expected {nnz} entries, found {count}", None)

    values = np.array(vals, dtype=domain.dtype) if vals else np.empty(0, domain.dtype)
    if symmetry == "symmetric":
        off = rows != cols
        rows, cols, values = (np.concatenate([rows, cols[off]]),
                              np.concatenate([cols, rows[off]]),
                              np.concatenate([values, values[off]]))
    try:
        return build_matrix(nrows, ncols, rows, cols, values, dup=None, domain=domain)
    except DuplicateEntry:
        raise DuplicateEntry("Matrix Market data contains a duplicate entry") from None


def _is_symmetric(A: SparseMatrix) -> bool:
    if A.nrows != A.ncols:
        return False
    d = A.to_dense(0)
    present = np.zeros(A.shape, dtype=bool)
    present[A.row_indices(), A.col_idx] = True
    return np.array_equal(present, present.T) and np.array_equal(d, d.T)


def _format_values(A: SparseMatrix, field: str, values: np.ndarray) -> list:
    if field == "pattern":
        return [""] * values.size
    if A.domain is FP64:
        return [" " + format(v, ".17g") for v in values.tolist()]
    return [" " + str(int(v)) for v in values.tolist()]


def mm_write(A: SparseMatrix, dst: PathOrText, symmetry: str = "general") -> None:
    """Write ``A`` as coordinate Matrix Market.

    ``symmetry="symmetric"`` is a hint: only the lower triangle is written, and
    only when ``A`` really is symmetric in structure and values.
    """
    A._check_live()
    if A.domain is FP64:
        field = "real"
    elif A.domain is BOOL and (A.nvals == 0 or bool(np.all(A.values))):
        field = "pattern"
    else:
        field = "integer"
    sym = symmetry == "symmetric" and _is_symmetric(A)
    rows, cols, values = A.row_indices(), A.col_idx, A.values
    if sym:
        lower = rows >= cols
        rows, cols, values = rows[lower], cols[lower], values[lower]
    out = [f"%%MatrixMarket matrix coordinate {field} {'symmetric' if sym else 'general'}\n",
           f"%%GraphBLAS type {A.domain.name}\n",
           f"{A.nrows} {A.ncols} {rows.size}\n"]
    body = _format_values(A, field, values)
    out.extend(f"{i + 1} {j + 1}{x}\n" for i, j, x in zip(rows.tolist(), cols.tolist(), body))
    fh, owned = _open_text(dst, "w")
    try:
        fh.writelines(out)
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    finally:
        if owned:
            fh.close()


def mm_dumps(A: SparseMatrix, symmetry: str = "general") -> str:
    buf = io.StringIO()
    mm_write(A, buf, symmetry)
    return buf.getvalue()


def mm_loads(text: str) -> SparseMatrix:
    return mm_read(io.StringIO(text))


# -- binary ---------------------------------------------------------------------------

def _value_dtype(domain: ValueDomain) -> np.dtype:
    return np.dtype(domain.dtype).newbyteorder("<") if domain is not BOOL else np.dtype(np.uint8)


def bin_write(A: SparseMatrix, dst: PathOrBytes) -> None:
    A._check_live()
    header = _HEADER.pack(MAGIC, VERSION, A.domain.value, A.nrows, A.ncols, A.nvals)
    payload = [header,
               A.row_ptr.astype("<i8").tobytes(),
               A.col_idx.astype("<i8").tobytes(),
               A.values.astype(_value_dtype(A.domain)).tobytes()]
    if isinstance(dst, (str, os.PathLike)):
        try:
            with open(dst, "wb") as fh:
                fh.writelines(payload)
        except OSError as exc:
            raise IoFailure(f"cannot write {os.fspath(dst)}: {exc.strerror}") from exc
    else:
        dst.writelines(payload)


def _read_exact(fh: BinaryIO, n: int, what: str) -> bytes:
    data = fh.read(n)
    if len(data) != n:
        raise TruncatedStream(f"stream ended inside {what} ({len(data)} of {n} bytes)")
    return data


def bin_read(src: PathOrBytes) -> SparseMatrix:
    if isinstance(src, (str, os.PathLike)):
        try:
            with open(src, "rb") as fh:
                return _bin_read(fh)
        except OSError as exc:
            raise IoFailure(f"cannot open {os.fspath(src)}: {exc.strerror}") from exc
    return _bin_read(src)


def _bin_read(fh: BinaryIO) -> SparseMatrix:
    head = fh.read(_HEADER.size)
    if len(head) >= 4 and head[:4] != MAGIC:
        raise BadMagic(f"bad magic {head[:4]!r}, expected {MAGIC!r}")
    if len(head) != _HEADER.size:
        raise TruncatedStream("stream ended inside the header")
    _, version, tag, nrows, ncols, nvals = _HEADER.unpack(head)
    if version != VERSION:
        raise UnsupportedVersion(f"format version {version}, expected {VERSION}")
    try:
        domain = ValueDomain(tag)
    except ValueError:
        raise IoFailure(f"unknown domain tag {tag}") from None
    vdt = _value_dtype(domain)
    row_ptr = np.frombuffer(_read_exact(fh, 8 * (nrows + 1), "row_ptr"), "<i8")
    col_idx = np.frombuffer(_read_exact(fh, 8 * nvals, "col_idx"), "<i8")
    values = np.frombuffer(_read_exact(fh, vdt.itemsize * nvals, "values"), vdt)
    A = SparseMatrix(nrows, ncols, domain, row_ptr.astype(np.int64), col_idx.astype(np.int64),
                     values.astype(domain.dtype))
    A.validate()
    return A


def read_matrix(path, fmt: str | None = None) -> SparseMatrix:
    """Read by format name (``"mm"`` or ``"bin"``), guessing from the extension if omitted."""
    if fmt is None:
        fmt = "bin" if os.fspath(path).endswith((".bin", ".lagk")) else "mm"
    return bin_read(path) if fmt == "bin" else mm_read(path)


__all__ = ["mm_read", "mm_write", "mm_dumps", "mm_loads", "bin_read", "bin_write",
           "read_matrix"]
