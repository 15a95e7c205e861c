from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .containers import SparseMatrix, SparseVector
from .operators import BinaryOp


@dataclass(frozen=True)
class MaskSpec:
    """Which output positions an operation may write.

    ``structural`` uses entry presence only; otherwise an entry must also be
    nonzero.  ``complement`` inverts membership.  ``replace`` deletes prior
    output entries that fall outside the mask instead of keeping them.
    """

    source: Optional[Union[SparseMatrix, SparseVector]] = None
    complement: bool = False
    structural: bool = False
    replace: bool = False


@dataclass(frozen=True)
class Descriptor:
    mask: MaskSpec = field(default_factory=MaskSpec)
    accumulator: Optional[BinaryOp] = None
    transpose_in1: bool = False
    transpose_in2: bool = False


NULL = Descriptor()


def descriptor(mask=None, *, complement=False, structural=False, replace=False,
               accum: Optional[BinaryOp] = None, transpose_in1=False,
               transpose_in2=False) -> Descriptor:
    return Descriptor(MaskSpec(mask, complement, structural, replace), accum,
                      transpose_in1, transpose_in2)
