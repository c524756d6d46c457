"""Supermodules over a tableau family: marked bases, signed mark generators,
and the induced action of the 0-Hecke generators.

A basis element is a tableau together with a subset X of marked entries,
encoded as (tableau index) * 2^n + mask, with bit j-1 of the mask set when
entry j is marked.  Mark generators act by toggling one mark with a sign
given by the parity of the smaller marked entries (an extra sign appears
when the toggled mark was already present, matching an exact square of -1).
Each 0-Hecke generator acts blockwise per tableau: descent and attacking
blocks stay on the tableau, nonattacking blocks add terms on the swapped
tableau.

The reference 2^n-dimensional supermodule attached to a single composition
(the action the filtration quotients must reproduce) is built by an
independent code path in :func:`build_M_alpha`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .compositions import (
    Composition,
    check_composition,
    comp_n,
    composition_size,
    descent_set,
    peak_set,
)
from .errors import DomainError, IncompatibleFamilyError
from .hecke import RelationReport, basis_sort_key, zero_hecke_violations
from .matrices import OperatorMatrix
from .series import PEAK, FormalSum
from .tableaux import (
    StandardTableau,
    TableauFamily,
    descent_set_tab,
    is_ascent_compatible,
    render_tableau,
    swap_entries,
)


@dataclass(frozen=True)
class MarkedTableau:
    """A tableau plus the set of marked entries."""

    tableau: StandardTableau
    marks: frozenset[int]

    def __post_init__(self):
        n = self.tableau.diagram.n
        marks = frozenset(self.marks)
        if any(not 1 <= j <= n for j in marks):
            raise DomainError(f"marks {sorted(marks)} out of range 1..{n}")
        object.__setattr__(self, "marks", marks)

    @property
    def parity(self) -> int:
        return len(self.marks) % 2

    def render(self) -> str:
        return render_tableau(self.tableau, self.marks)


def _mask_of(marks: frozenset[int]) -> int:
    mask = 0
    for j in marks:
        mask |= 1 << (j - 1)
    return mask


def _marks_of(mask: int) -> frozenset[int]:
    return frozenset(j + 1 for j in range(mask.bit_length()) if mask >> j & 1)


@lru_cache(maxsize=None)
def _popcounts(n: int) -> np.ndarray:
    size = 1 << n
    pc = np.zeros(size, dtype=np.int64)
    for m in range(1, size):
        pc[m] = pc[m >> 1] + (m & 1)
    return pc


@lru_cache(maxsize=None)
def _hecke_mask_blocks(n: int, i: int):
    """Per-mask index/value arrays for the three generator cases at value i.

    Returns a dict with keys 'descent', 'attack', 'swap'; the 'attack' arrays
    are also the tableau-diagonal part of the nonattacking case, and 'swap'
    is its part landing on the swapped tableau's block.
    """
    masks = np.arange(1 << n, dtype=np.int64)
    bit_i = np.int64(1 << (i - 1))
    bit_j = np.int64(1 << i)
    has_i = (masks & bit_i) != 0
    has_j = (masks & bit_j) != 0

    rows_d = np.where(has_i & ~has_j, masks - bit_i + bit_j, masks)
    vals_d = np.where(has_i & has_j, np.int64(1), np.int64(-1))
    rows_d = np.where(has_i & has_j, masks - bit_i - bit_j, rows_d)
    descent = (rows_d, masks, vals_d)

    sel = has_j  # the two cases with the higher mark present
    att_cols = np.concatenate([masks[sel], masks[sel]])
    att_rows = np.concatenate(
        [masks[sel], np.where(has_i[sel], masks[sel] - bit_i - bit_j, masks[sel] - bit_j + bit_i)]
    )
    att_vals = np.concatenate(
        [np.full(sel.sum(), -1, dtype=np.int64), np.full(sel.sum(), 1, dtype=np.int64)]
    )
    attack = (att_rows, att_cols, att_vals)

    rows_s = masks.copy()
    rows_s = np.where(has_i & ~has_j, masks - bit_i + bit_j, rows_s)
    rows_s = np.where(~has_i & has_j, masks - bit_j + bit_i, rows_s)
    vals_s = np.where(has_i & has_j, np.int64(-1), np.int64(1))
    swap = (rows_s, masks, vals_s)
    return {"descent": descent, "attack": attack, "swap": swap}


@lru_cache(maxsize=None)
def _mark_blocks(n: int, j: int):
    """Index/value arrays for toggling mark j on all masks."""
    masks = np.arange(1 << n, dtype=np.int64)
    bit = np.int64(1 << (j - 1))
    below = _popcounts(n)[masks & (bit - 1)]
    present = (masks & bit) != 0
    signs = np.where((below + present.astype(np.int64)) % 2 == 0, np.int64(1), np.int64(-1))
    return masks ^ bit, masks, signs


@dataclass(frozen=True)
class CliffordModuleRep:
    """Ordered marked basis plus all generator matrices."""

    family: TableauFamily
    basis_tableaux: tuple[StandardTableau, ...]
    pi: tuple[OperatorMatrix, ...]
    c: tuple[OperatorMatrix, ...]
    parity: np.ndarray

    @cached_property
    def tableau_index(self) -> dict[StandardTableau, int]:
        return {t: i for i, t in enumerate(self.basis_tableaux)}

    @property
    def n(self) -> int:
        return self.family.n

    @property
    def dim(self) -> int:
        return len(self.basis_tableaux) << self.n

    def index_of(self, element: MarkedTableau) -> int:
        t = self.tableau_index.get(element.tableau)
        if t is None:
            raise DomainError("tableau is not a basis tableau")
        return (t << self.n) + _mask_of(element.marks)

    def basis_element(self, index: int) -> MarkedTableau:
        t, mask = divmod(index, 1 << self.n)
        return MarkedTableau(self.basis_tableaux[t], _marks_of(mask))


def build_clifford_module(family: TableauFamily, force: bool = False) -> CliffordModuleRep:
    """Induce the supermodule on marked tableaux from the family's action."""
    if not family.members:
        raise DomainError(f"family {family.family_tag} is empty")
    if not force:
        compat = is_ascent_compatible(family)
        if not compat.ok:
            raise IncompatibleFamilyError("ascent", compat.witness)
    basis = tuple(sorted(family.members, key=basis_sort_key))
    index = {t: k for k, t in enumerate(basis)}
    n = family.n
    block = 1 << n
    dim = len(basis) * block

    pi_mats = []
    for i in range(1, n):
        blocks = _hecke_mask_blocks(n, i)
        rows_parts, cols_parts, vals_parts = [], [], []
        for t, tab in enumerate(basis):
            off = t * block
            if i in descent_set_tab(tab):
                r, c, v = blocks["descent"]
                rows_parts.append(r + off)
                cols_parts.append(c + off)
                vals_parts.append(v)
            else:
                swapped = swap_entries(tab, i)
                r, c, v = blocks["attack"]
                rows_parts.append(r + off)
                cols_parts.append(c + off)
                vals_parts.append(v)
                if swapped in family:
                    r, c, v = blocks["swap"]
                    rows_parts.append(r + index[swapped] * block)
                    cols_parts.append(c + off)
                    vals_parts.append(v)
        pi_mats.append(
            OperatorMatrix.from_triples(
                dim,
                np.concatenate(rows_parts) if rows_parts else [],
                np.concatenate(cols_parts) if cols_parts else [],
                np.concatenate(vals_parts) if vals_parts else [],
            )
        )

    c_mats = []
    for j in range(1, n + 1):
        r, c, v = _mark_blocks(n, j)
        offs = np.arange(len(basis), dtype=np.int64) * block
        rows = (r[None, :] + offs[:, None]).ravel()
        cols = (c[None, :] + offs[:, None]).ravel()
        vals = np.tile(v, len(basis))
        c_mats.append(OperatorMatrix.from_triples(dim, rows, cols, vals))

    parity = np.tile(_popcounts(n) & 1, len(basis))
    return CliffordModuleRep(family, basis, tuple(pi_mats), tuple(c_mats), parity)


@dataclass(frozen=True)
class MAlphaRep:
    """The 2^n-dimensional supermodule attached to one composition."""

    alpha: Composition
    pi: tuple[OperatorMatrix, ...]
    c: tuple[OperatorMatrix, ...]
    parity: np.ndarray

    @property
    def n(self) -> int:
        return composition_size(self.alpha)

    @property
    def dim(self) -> int:
        return 1 << self.n


@lru_cache(maxsize=None)
def build_M_alpha(alpha: Composition) -> MAlphaRep:
    """Build the reference supermodule directly from its case formulas.

    Kept as straight per-mask case analysis, deliberately independent of the
    vectorized block assembly used for family supermodules.
    """
    alpha = check_composition(alpha)
    n = composition_size(alpha)
    if n < 1:
        raise DomainError("the composition must have size at least 1")
    des = descent_set(alpha)
    dim = 1 << n

    pi_mats = []
    for i in range(1, n):
        bit_i, bit_j = 1 << (i - 1), 1 << i
        rows, cols, vals = [], [], []
        for mask in range(dim):
            has_i, has_j = bool(mask & bit_i), bool(mask & bit_j)
            if i in des:
                if has_i and not has_j:
                    rows.append(mask - bit_i + bit_j), cols.append(mask), vals.append(-1)
                elif has_i and has_j:
                    rows.append(mask - bit_i - bit_j), cols.append(mask), vals.append(1)
                else:
                    rows.append(mask), cols.append(mask), vals.append(-1)
            else:
                if not has_j:
                    continue
                rows.append(mask), cols.append(mask), vals.append(-1)
                if has_i:
                    rows.append(mask - bit_i - bit_j), cols.append(mask), vals.append(1)
                else:
                    rows.append(mask - bit_j + bit_i), cols.append(mask), vals.append(1)
        pi_mats.append(OperatorMatrix.from_triples(dim, rows, cols, vals))

    c_mats = []
    for j in range(1, n + 1):
        bit = 1 << (j - 1)
        rows, cols, vals = [], [], []
        for mask in range(dim):
            below = bin(mask & (bit - 1)).count("1")
            sign = -1 if (below + (1 if mask & bit else 0)) % 2 else 1
            rows.append(mask ^ bit), cols.append(mask), vals.append(sign)
        c_mats.append(OperatorMatrix.from_triples(dim, rows, cols, vals))

    parity = np.array([bin(m).count("1") & 1 for m in range(dim)], dtype=np.int64)
    return MAlphaRep(alpha, tuple(pi_mats), tuple(c_mats), parity)


def _parity_violations(rep) -> list[str]:
    out = []
    par = rep.parity
    for i, mat in enumerate(rep.pi, start=1):
        rows, cols, _ = mat.coo_arrays()
        if rows.size and not np.all(par[rows] == par[cols]):
            out.append(f"pi[{i}] does not preserve parity")
    for j, mat in enumerate(rep.c, start=1):
        rows, cols, _ = mat.coo_arrays()
        if rows.size and not np.all(par[rows] != par[cols]):
            out.append(f"c[{j}] does not flip parity")
    return out


def verify_clifford_relations(rep) -> RelationReport:
    """Exact matrix verification of the full generator relation suite.

    Works on any object with ``pi``, ``c``, ``parity``, and ``dim``
    attributes (family supermodules and the single-composition reference
    modules alike).
    """
    checked, violations = zero_hecke_violations(rep.pi, -1)
    eye = OperatorMatrix.identity(rep.dim)
    cs, pis = rep.c, rep.pi
    for j, cj in enumerate(cs, start=1):
        checked += 1
        if cj @ cj != eye.scaled(-1):
            violations.append(f"c[{j}]^2 != -1")
    for a in range(len(cs)):
        for b in range(a + 1, len(cs)):
            checked += 1
            if cs[a] @ cs[b] != (cs[b] @ cs[a]).scaled(-1):
                violations.append(f"c[{a + 1}] and c[{b + 1}] do not anticommute")
    for i, p in enumerate(pis, start=1):
        for j, cj in enumerate(cs, start=1):
            checked += 1
            if j == i:
                if p @ cj != cs[i] @ p:
                    violations.append(f"pi[{i}]c[{i}] != c[{i + 1}]pi[{i}]")
            elif j == i + 1:
                if (p + eye) @ cs[i] != cs[i - 1] @ (p + eye):
                    violations.append(f"(pi[{i}]+1)c[{i + 1}] != c[{i}](pi[{i}]+1)")
            else:
                if p @ cj != cj @ p:
                    violations.append(f"pi[{i}] and c[{j}] do not commute")
    par = _parity_violations(rep)
    checked += len(rep.pi) + len(rep.c)
    violations.extend(par)
    return RelationReport(checked, tuple(violations))


def peak_characteristic(obj) -> FormalSum:
    """Sum of peak basis elements indexed by member peak sets."""
    family = obj if isinstance(obj, TableauFamily) else obj.family
    n = family.n
    terms: dict[Composition, int] = {}
    for tab in family:
        alpha = comp_n(peak_set(descent_set_tab(tab)), n)
        terms[alpha] = terms.get(alpha, 0) + 1
    return FormalSum(PEAK, n, terms)


def filtration_quotient_check(rep: CliffordModuleRep, k: int) -> bool:
    """Compare the k-th filtration quotient with the reference supermodule.

    The quotient acts on the marked copies of the k-th basis tableau with all
    swapped-tableau terms deleted, which is exactly the tableau's diagonal
    block; the mark coordinate map is then an intertwiner iff the block
    equals the reference module built from the tableau's descent composition.
    """
    m = len(rep.basis_tableaux)
    if not 1 <= k <= m:
        raise DomainError(f"filtration index {k} out of range 1..{m}")
    tab = rep.basis_tableaux[k - 1]
    alpha = comp_n(descent_set_tab(tab), rep.n)
    ref = build_M_alpha(alpha)
    block = 1 << rep.n
    lo = (k - 1) * block
    hi = lo + block
    for mine, target in zip(rep.pi, ref.pi):
        if mine.block(lo, hi) != target:
            return False
    for mine, target in zip(rep.c, ref.c):
        if mine.block(lo, hi) != target:
            return False
    return True


def clifford_reachability(rep: CliffordModuleRep, seed) -> frozenset[MarkedTableau]:
    """Closure of the seed under the supports of all generator images."""
    if isinstance(seed, StandardTableau):
        seed = MarkedTableau(seed, frozenset())
    start = rep.index_of(seed)
    seen = {start}
    frontier = [start]
    mats = rep.pi + rep.c
    while frontier:
        nxt = []
        for idx in frontier:
            for mat in mats:
                for r in mat.column_support(idx):
                    if r not in seen:
                        seen.add(r)
                        nxt.append(r)
        frontier = nxt
    return frozenset(rep.basis_element(i) for i in seen)


def is_tableau_cyclic(rep: CliffordModuleRep, seed) -> bool:
    """True iff the closure of the (unmarked) seed is the whole basis."""
    return len(clifford_reachability(rep, seed)) == rep.dim
