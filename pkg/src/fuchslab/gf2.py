"""Bit-packed GF(2) linear algebra on Python ints.

A vector is an int whose bit i is coordinate i. A subspace is stored as its
unique reduced row-echelon basis: rows sorted by pivot column, every pivot
bit cleared from all other rows, so two subspaces are equal iff their bases
are equal as tuples.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


def lowest_bit(v: int) -> int:
    """Index of the least significant set bit of a nonzero int."""
    return (v & -v).bit_length() - 1


def bits(v: int) -> Iterator[int]:
    """Yield the indices of the set bits of v, ascending."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def rref(rows: Iterable[int]) -> tuple[int, ...]:
    """Canonical reduced row-echelon basis of the span of the given rows."""
    basis: list[int] = []  # invariant: fully reduced, distinct pivots
    for v in rows:
        for row in basis:
            if (v >> lowest_bit(row)) & 1:
                v ^= row
        if v == 0:
            continue
        p = lowest_bit(v)
        for i, row in enumerate(basis):
            if (row >> p) & 1:
                basis[i] = row ^ v
        basis.append(v)
    basis.sort(key=lowest_bit)
    return tuple(basis)


def reduce_vector(v: int, basis: Sequence[int]) -> int:
    """Remainder of v after elimination against an RREF basis."""
    for row in basis:
        if (v >> lowest_bit(row)) & 1:
            v ^= row
    return v


def in_span(v: int, basis: Sequence[int]) -> bool:
    return reduce_vector(v, basis) == 0


def rank(rows: Iterable[int]) -> int:
    return len(rref(rows))


def express_in_rref(v: int, basis: Sequence[int]) -> int | None:
    """Coefficient mask c with v = XOR of the rows selected by c, or None.

    Valid only against an RREF basis, where the coefficient of each row is
    just the bit of v at that row's pivot.
    """
    coeffs = 0
    for i, row in enumerate(basis):
        if (v >> lowest_bit(row)) & 1:
            coeffs |= 1 << i
            v ^= row
    return coeffs if v == 0 else None


def kernel_of_images(images: Sequence[int], width: int) -> tuple[int, ...]:
    """Kernel of the linear map sending domain basis vector i to images[i].

    The images live in a codomain of `width` bits; the kernel comes back as
    an RREF basis in the domain (bit i = domain coordinate i).
    """
    mask = (1 << width) - 1
    pivots: dict[int, int] = {}  # pivot column -> augmented row
    kernel: list[int] = []
    for i, img in enumerate(images):
        v = (img & mask) | (1 << (width + i))
        while v & mask:
            p = lowest_bit(v & mask)
            row = pivots.get(p)
            if row is None:
                pivots[p] = v
                v = 0
                break
            v ^= row
        if v:
            kernel.append(v >> width)
    return rref(kernel)
