"""The realizability engine.

A ring endomorphism of R = F2[G]/I with unit group G is determined by its
restriction to G, and a group endomorphism of G lifts to the ring exactly
when its linear extension maps I into I. The engine therefore enumerates
End(G), filters by ideal preservation, and renders the verdict.
"""

from __future__ import annotations

import itertools
import multiprocessing
import os
from dataclasses import dataclass

from . import gf2
from .algebra import Algebra, Ideal, QuotientRing
from .errors import BudgetExceededError, UnitGroupMismatchError
from .groups import (
    GroupHom,
    GroupSpec,
    canonicalize,
    element_index,
    elements,
    endo_count,
    image_candidates,
)

DEFAULT_MAX_ENDOS = 10**6


@dataclass(frozen=True)
class RealizabilityReport:
    """Outcome of checking whether a ring fully realizes a group."""

    group: GroupSpec
    ring_dim: int
    unit_group_ok: bool
    total_endos: int
    realized_endos: int
    fully_realizes: bool
    failing_witness: GroupHom | None


def worker_count() -> int:
    """Worker cap from FUCHSLAB_THREADS (default 1, bounded by CPU count)."""
    raw = os.environ.get("FUCHSLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, min(n, os.cpu_count() or 1))


def preserves_ideal(g: GroupSpec, phi: GroupHom, i: Ideal) -> bool:
    """True iff the linear extension of phi maps every RREF basis vector of
    the ideal back into the ideal."""
    if not (i.ambient.group_basis and i.ambient.dim == g.torsion_order):
        raise ValueError("the ideal must live in the group algebra of g")
    els = elements(g)
    image_bit: dict[int, int] = {}
    for v in i.rref_basis:
        acc = 0
        for b in gf2.bits(v):
            bit = image_bit.get(b)
            if bit is None:
                bit = 1 << element_index(g, phi.apply(els[b]))
                image_bit[b] = bit
            acc ^= bit
        if not i.contains(acc):
            return False
    return True


def _scan_data(g: GroupSpec, ideal: Ideal) -> tuple:
    """Precomputed tables for the endomorphism filter.

    Ideal preservation is checked on the recorded generators when present
    (a ring map pushes an ideal generator set to a generator set of the
    image ideal), else on the RREF basis; both criteria agree.
    """
    amb = ideal.ambient
    if not (amb.group_basis and amb.dim == g.torsion_order):
        raise ValueError("the ideal must live in the group algebra of g")
    cayley = tuple(
        tuple(entry.bit_length() - 1 for entry in row) for row in amb.mult_table
    )
    red = tuple(ideal.reduce(1 << b) for b in range(amb.dim))
    check_vectors = tuple(v for v in (ideal.generators or ideal.rref_basis) if v)
    needed = sorted({b for v in check_vectors for b in gf2.bits(v)})
    position = {b: i for i, b in enumerate(needed)}
    els = elements(g)
    steps = tuple(
        tuple((j, e) for j, e in enumerate(els[b]) if e) for b in needed
    )
    checks = tuple(tuple(position[b] for b in gf2.bits(v)) for v in check_vectors)
    cands = tuple(
        tuple(element_index(g, e) for e in cand) for cand in image_candidates(g)
    )
    return (tuple(len(c) for c in cands), cands, cayley, red, steps, checks)


def _scan_endos(data: tuple, start: int, stop: int) -> tuple[int, int | None]:
    """Count ideal-preserving endomorphisms with global index in [start, stop);
    also report the first failing index, for deterministic witnesses."""
    sizes, cands, cayley, red, steps, checks = data
    digits = []
    t = start
    for size in reversed(sizes):
        digits.append(t % size)
        t //= size
    digits.reverse()
    preserved = 0
    first_fail: int | None = None
    for t in range(start, stop):
        chosen = [cands[j][d] for j, d in enumerate(digits)]
        imgs = []
        for step in steps:
            img = 0
            for j, mult in step:
                cj = chosen[j]
                for _ in range(mult):
                    img = cayley[img][cj]
            imgs.append(img)
        ok = True
        for support in checks:
            acc = 0
            for pos in support:
                acc ^= red[imgs[pos]]
            if acc:
                ok = False
                break
        if ok:
            preserved += 1
        elif first_fail is None:
            first_fail = t
        for j in range(len(digits) - 1, -1, -1):
            digits[j] += 1
            if digits[j] < sizes[j]:
                break
            digits[j] = 0
    return preserved, first_fail


def count_preserving(g: GroupSpec, ideal: Ideal, total: int,
                     workers: int = 1) -> tuple[int, int | None]:
    """Count the endomorphisms of g whose extension preserves the ideal, and
    the enumeration index of the first one that does not (None if all do)."""
    data = _scan_data(g, ideal)
    if workers <= 1 or total < 4096:
        return _scan_endos(data, 0, total)
    bounds = [total * i // workers for i in range(workers + 1)]
    chunks = [(data, bounds[i], bounds[i + 1]) for i in range(workers)]
    with multiprocessing.Pool(workers) as pool:
        results = pool.starmap(_scan_endos, chunks)
    preserved = sum(r[0] for r in results)
    fails = [r[1] for r in results if r[1] is not None]
    return preserved, (min(fails) if fails else None)


def _hom_from_index(g: GroupSpec, index: int) -> GroupHom:
    cands = image_candidates(g)
    digits = []
    for cand in reversed(cands):
        digits.append(index % len(cand))
        index //= len(cand)
    digits.reverse()
    return GroupHom(g, g, tuple(cand[d] for cand, d in zip(cands, digits)))


def ring_endos(q: QuotientRing, *, max_endos: int = DEFAULT_MAX_ENDOS) -> list[GroupHom]:
    """The group endomorphisms of G that lift to ring endomorphisms of q.

    Requires the unit group of q to be exactly the image of G, so that the
    returned list is in bijection with End(q).
    """
    g = q.parent_group
    if q.unit_to_group is None:
        raise UnitGroupMismatchError(
            "the unit group is not the image of the presenting group"
        )
    total = endo_count(g)
    if total > max_endos:
        raise BudgetExceededError(f"|End(G)| = {total} exceeds the budget {max_endos}")
    kept = []
    for images in itertools.product(*image_candidates(g)):
        hom = GroupHom(g, g, images)
        if preserves_ideal(g, hom, q.ideal):
            kept.append(hom)
    return kept


def fully_realizes(q: QuotientRing, expected: GroupSpec,
                   *, max_endos: int = DEFAULT_MAX_ENDOS,
                   workers: int | None = None) -> RealizabilityReport:
    """Full-realizability verdict for q against the expected unit group.

    unit_group_ok requires the unit set to be exactly the image of G and its
    invariant factors to match the expected group. The witness, when one
    exists, is the first endomorphism in enumeration order that does not
    preserve the ideal.
    """
    g = q.parent_group
    total = endo_count(g)
    if total > max_endos:
        raise BudgetExceededError(f"|End(G)| = {total} exceeds the budget {max_endos}")
    expected_c = canonicalize(expected)
    unit_ok = (
        expected_c.is_finite
        and q.unit_to_group is not None
        and q.unit_group_invariants() == expected_c.finite_orders
    )
    if workers is None:
        workers = worker_count()
    realized, first_fail = count_preserving(g, q.ideal, total, workers)
    fully = unit_ok and realized == total
    witness = None
    if unit_ok and not fully and first_fail is not None:
        witness = _hom_from_index(g, first_fail)
    return RealizabilityReport(
        group=expected_c,
        ring_dim=q.dim,
        unit_group_ok=unit_ok,
        total_endos=total,
        realized_endos=realized,
        fully_realizes=fully,
        failing_witness=witness,
    )


def ring_endos_oracle(a: Algebra) -> int:
    """Ring endomorphism count by brute force over all linear self-maps,
    filtering unitality and multiplicativity on basis pairs. Exponential in
    dim**2, so capped at dim <= 4; kept as an independent oracle for the
    End(G)-filter path."""
    if a.dim > 4:
        raise BudgetExceededError("oracle enumerates 2^(dim^2) maps; dim <= 4 required")
    dim = a.dim
    one = a.one_vector
    table = a.mult_table
    pairs = [(i, j) for i in range(dim) for j in range(i, dim)]
    count = 0
    for images in itertools.product(range(1 << dim), repeat=dim):
        f_one = 0
        for b in gf2.bits(one):
            f_one ^= images[b]
        if f_one != one:
            continue
        ok = True
        for i, j in pairs:
            lhs = 0
            for b in gf2.bits(table[i][j]):
                lhs ^= images[b]
            if lhs != a.mul(images[i], images[j]):
                ok = False
                break
        if ok:
            count += 1
    return count
