"""Executable verification of the package's structural identities.

Covers: the unshift intertwiner between shifted and column-shape
supermodules, unitriangularity of the peak-basis transition matrix, peak
positivity of the difference of the two enumerator families, agreement of
the two routes to the symmetric peak sums, weak Bruhat interval modules, and
the small witness separating diagram modules from interval modules.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .clifford import (
    build_clifford_module,
    peak_characteristic,
)
from .compositions import (
    Composition,
    check_composition,
    enumerate_peak_compositions,
    enumerate_strict_partitions,
    format_composition,
    is_peak_composition,
    is_strict_partition,
)
from .errors import DomainError
from .families import (
    FamilyKind,
    NATIVE_CONVENTION,
    build_family,
    demo_compatible_family,
    rect,
    shapes_for,
    single_row_diagram,
)
from .hecke import (
    HeckeModuleRep,
    build_hecke_module,
    qsym_characteristic,
    verify_hecke_relations,
)
from .matrices import OperatorMatrix
from .series import FormalSum, theta
from .tableaux import StandardTableau, TableauFamily, descent_set_tab


class TheoremMismatch(AssertionError):
    """An identity the package is supposed to reproduce failed exactly."""


# ---------------------------------------------------------------------------
# permutations and the left weak order

Perm = tuple[int, ...]


def check_perm(word: Iterable[int]) -> Perm:
    g = tuple(word)
    if sorted(g) != list(range(1, len(g) + 1)):
        raise DomainError(f"{g} is not a permutation of 1..{len(g)}")
    return g


def perm_descents(g: Perm) -> frozenset[int]:
    """Values i written to the right of i+1."""
    pos = {v: p for p, v in enumerate(g)}
    return frozenset(i for i in range(1, len(g)) if pos[i] > pos[i + 1])


def perm_inversions(g: Perm) -> int:
    return sum(1 for r in range(len(g)) for s in range(r + 1, len(g)) if g[r] > g[s])


def s_apply(i: int, g: Perm) -> Perm:
    """Exchange the values i and i+1 (left multiplication by a transposition)."""
    out = list(g)
    a, b = out.index(i), out.index(i + 1)
    out[a], out[b] = out[b], out[a]
    return tuple(out)


def longest_element(n: int) -> Perm:
    return tuple(range(n, 0, -1))


def reverse_word(g: Perm) -> Perm:
    """One-line reverse; equals right multiplication by the longest element."""
    return g[::-1]


def ascent_pairs(g: Perm) -> frozenset[tuple[int, int]]:
    """Position pairs (r, s), r < s, holding increasing values."""
    n = len(g)
    return frozenset(
        (r, s) for r in range(1, n + 1) for s in range(r + 1, n + 1) if g[r - 1] < g[s - 1]
    )


def leq_left_weak(sigma: Perm, rho: Perm) -> bool:
    """sigma is below rho iff every ascent pair of rho is one of sigma."""
    return ascent_pairs(rho) <= ascent_pairs(sigma)


@dataclass(frozen=True)
class BruhatInterval:
    sigma: Perm
    rho: Perm
    members: tuple[Perm, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: Perm) -> bool:
        return g in set(self.members)


def _upward_closure(g: Perm) -> set[Perm]:
    seen = {g}
    frontier = [g]
    while frontier:
        nxt = []
        for h in frontier:
            des = perm_descents(h)
            for i in range(1, len(h)):
                if i not in des:
                    up = s_apply(i, h)
                    if up not in seen:
                        seen.add(up)
                        nxt.append(up)
        frontier = nxt
    return seen


def _downward_closure(g: Perm) -> set[Perm]:
    seen = {g}
    frontier = [g]
    while frontier:
        nxt = []
        for h in frontier:
            for i in perm_descents(h):
                down = s_apply(i, h)
                if down not in seen:
                    seen.add(down)
                    nxt.append(down)
        frontier = nxt
    return seen


def weak_bruhat_interval(sigma: Perm, rho: Perm) -> BruhatInterval:
    """The interval between two comparable permutations in left weak order.

    Membership is computed by closing upwards from the bottom and downwards
    from the top, and cross-validated against the ascent-pair criterion.
    """
    sigma, rho = check_perm(sigma), check_perm(rho)
    if len(sigma) != len(rho):
        raise DomainError("permutations of different sizes")
    if not leq_left_weak(sigma, rho):
        raise DomainError(f"{sigma} is not below {rho} in left weak order")
    up = _upward_closure(sigma)
    members = sorted(up & _downward_closure(rho))
    ap_rho = ascent_pairs(rho)
    criterion = sorted(g for g in up if ap_rho <= ascent_pairs(g))
    if members != criterion:
        raise TheoremMismatch(
            f"interval [{sigma}, {rho}]: closure and ascent-pair criterion disagree"
        )
    return BruhatInterval(sigma, rho, tuple(members))


def all_intervals(n: int) -> list[BruhatInterval]:
    """Every interval of the left weak order on permutations of 1..n."""
    perms = [tuple(g) for g in itertools.permutations(range(1, n + 1))]
    out = []
    for sigma in perms:
        for rho in perms:
            if leq_left_weak(sigma, rho):
                out.append(weak_bruhat_interval(sigma, rho))
    return out


def words_family(words: Sequence[Perm], tag: str = "words") -> TableauFamily:
    """Fillings of a single row of n boxes whose reading words are the given
    one-line permutations."""
    words = [check_perm(w) for w in words]
    if not words:
        raise DomainError("no words given")
    n = len(words[0])
    if any(len(w) != n for w in words):
        raise DomainError("words of mixed sizes")
    diagram = single_row_diagram(n)
    members = tuple(StandardTableau(diagram, w) for w in words)
    return TableauFamily(diagram, members, tag)


def _direct_interval_matrices(
    interval: BruhatInterval, order: Sequence[Perm], flavour: str
) -> list[OperatorMatrix]:
    """Generator matrices built straight from the interval action rules.

    ``flavour`` 'bar' is the signed action (descents scale by -1, ascents
    swap inside the interval or die); 'plain' is the unsigned action
    (descents fix, ascents swap inside the interval or die).
    """
    member_set = set(interval.members)
    index = {g: k for k, g in enumerate(order)}
    n = len(interval.sigma)
    dim = len(order)
    mats = []
    for i in range(1, n):
        rows, cols, vals = [], [], []
        for col, g in enumerate(order):
            if i in perm_descents(g):
                if flavour == "bar":
                    rows.append(col), cols.append(col), vals.append(-1)
                else:
                    rows.append(col), cols.append(col), vals.append(1)
            else:
                up = s_apply(i, g)
                if up in member_set:
                    rows.append(index[up]), cols.append(col), vals.append(1)
        mats.append(OperatorMatrix.from_triples(dim, rows, cols, vals))
    return mats


def build_interval_modules(interval: BruhatInterval) -> tuple[HeckeModuleRep, HeckeModuleRep]:
    """Realize both interval modules as diagram modules on single-row fillings.

    The signed interval action must equal, matrix for matrix, the module on
    fillings reading to the interval itself; the unsigned action must equal
    the sign-flipped-convention module on the reversed words.  Any mismatch
    raises; none is expected.
    """
    fam = words_family(interval.members, tag=f"interval{list(interval.sigma)}-{list(interval.rho)}")
    rep = build_hecke_module(fam, "pi")
    order = [t.reading_word for t in rep.basis]
    direct = _direct_interval_matrices(interval, order, "bar")
    if list(rep.pi) != direct:
        raise TheoremMismatch("signed interval action differs from the diagram module")

    rev_fam = words_family(
        [reverse_word(g) for g in interval.members],
        tag=f"interval-rev{list(interval.sigma)}-{list(interval.rho)}",
    )
    hat_rep = build_hecke_module(rev_fam, "hat")
    hat_order = [reverse_word(t.reading_word) for t in hat_rep.basis]

    member_set = set(interval.members)
    idx = {g: k for k, g in enumerate(hat_order)}
    n = len(interval.sigma)
    dim = len(hat_order)
    for i in range(1, n):
        rows, cols, vals = [], [], []
        for col, g in enumerate(hat_order):
            if i in perm_descents(g):
                rows.append(col), cols.append(col), vals.append(1)
            else:
                up = s_apply(i, g)
                if up in member_set:
                    rows.append(idx[up]), cols.append(col), vals.append(1)
        direct_b = OperatorMatrix.from_triples(dim, rows, cols, vals)
        if hat_rep.pi[i - 1] != direct_b:
            raise TheoremMismatch(
                "unsigned interval action differs from the reversed-word module"
            )
    return rep, hat_rep


# ---------------------------------------------------------------------------
# intertwiners and basis theorems


def _check_intertwiner(rep_a, rep_b, pairing: Callable[[int], int]) -> bool:
    """Exact matrix identity P A = B P for every generator, with P the
    permutation matrix sending basis index k of A to pairing(k) in B."""
    dim = rep_a.dim
    if dim != rep_b.dim:
        return False
    rows = [pairing(k) for k in range(dim)]
    P = OperatorMatrix.from_triples(dim, rows, list(range(dim)), [1] * dim)
    gens_a = list(rep_a.pi) + list(getattr(rep_a, "c", ()))
    gens_b = list(rep_b.pi) + list(getattr(rep_b, "c", ()))
    return all(P @ A == B @ P for A, B in zip(gens_a, gens_b))


def check_rect_isomorphism(lam: Composition) -> bool:
    """The unshift map on marked tableaux intertwines the two supermodules."""
    lam = check_composition(lam)
    if not is_strict_partition(lam):
        raise DomainError(f"{lam} is not a strict partition")
    shifted = build_clifford_module(build_family(FamilyKind.SSHT, lam))
    columnar = build_clifford_module(build_family(FamilyKind.SPYCT, lam))
    n = shifted.n
    block = 1 << n
    tab_pairing = [
        columnar.tableau_index[rect(t)] for t in shifted.basis_tableaux
    ]

    def pairing(k: int) -> int:
        t, mask = divmod(k, block)
        return tab_pairing[t] * block + mask

    return _check_intertwiner(shifted, columnar, pairing)


def transition_to_peak_basis(n: int) -> tuple[tuple[Composition, ...], list[list[Fraction]]]:
    """Peak-basis coefficients of the columnar peak sums, one row per peak
    composition in descending order; asserts unit diagonal and vanishing
    above it."""
    if n < 1:
        raise DomainError("n must be positive")
    peaks = tuple(enumerate_peak_compositions(n))
    col = {alpha: j for j, alpha in enumerate(peaks)}
    matrix = []
    for i, alpha in enumerate(peaks):
        f = peak_characteristic(build_family(FamilyKind.SPYCT, alpha))
        row = [Fraction(0)] * len(peaks)
        for beta, coeff in f.terms.items():
            row[col[beta]] = coeff
        if row[i] != 1:
            raise TheoremMismatch(f"diagonal coefficient at {alpha} is {row[i]}, not 1")
        for j in range(i):
            if row[j] != 0:
                raise TheoremMismatch(
                    f"row {alpha} has coefficient {row[j]} at larger index {peaks[j]}"
                )
        matrix.append(row)
    return peaks, matrix


def check_Q_minus_S_positivity(alpha: Composition) -> bool:
    """The row-built peak sum minus the triple-rule-built one is coefficient-
    wise nonnegative in the peak basis."""
    alpha = check_composition(alpha)
    if not is_peak_composition(alpha):
        raise DomainError(f"{alpha} is not a peak composition")
    q = peak_characteristic(build_family(FamilyKind.SPCT, alpha))
    s = peak_characteristic(build_family(FamilyKind.SPYCT, alpha))
    return all(coeff >= 0 for coeff in (q - s).terms.values())


def check_schurQ_inclusion(lam: Composition) -> bool:
    """Both families over a strict partition give the same peak sum."""
    lam = check_composition(lam)
    if not is_strict_partition(lam):
        raise DomainError(f"{lam} is not a strict partition")
    a = peak_characteristic(build_family(FamilyKind.SSHT, lam))
    b = peak_characteristic(build_family(FamilyKind.SPYCT, lam))
    return a == b


def theta_matches_peak(family: TableauFamily) -> bool:
    """theta of the fundamental characteristic equals the peak characteristic."""
    return theta(qsym_characteristic(family)) == peak_characteristic(family)


# ---------------------------------------------------------------------------
# the separating witness


@dataclass(frozen=True)
class WitnessReport:
    size_three_intervals: int
    all_chains: bool
    max_nonattacking_in_intervals: int
    demo_words_form_interval: bool
    demo_max_nonattacking: int
    verdict: str

    def __str__(self) -> str:
        return self.verdict


def _interval_nonattacking_counts(interval: BruhatInterval) -> list[int]:
    member_set = set(interval.members)
    out = []
    for g in interval.members:
        des = perm_descents(g)
        count = sum(
            1
            for i in range(1, len(g))
            if i not in des and s_apply(i, g) in member_set
        )
        out.append(count)
    return out


def generalization_witness() -> WitnessReport:
    """Re-derive the witness that some diagram module is not an interval
    module: every 3-element interval on 3 letters is a chain, so its basis
    elements admit at most one nonattacking ascent, while the bent-diagram
    demo family has a member with two."""
    size3 = [iv for iv in all_intervals(3) if len(iv) == 3]
    all_chains = True
    max_nonatt = 0
    for iv in size3:
        counts = _interval_nonattacking_counts(iv)
        max_nonatt = max(max_nonatt, max(counts))
        members = sorted(iv.members, key=perm_inversions)
        for a, b in zip(members, members[1:]):
            if not leq_left_weak(a, b):
                all_chains = False

    fam = demo_compatible_family()
    demo_words = sorted(t.reading_word for t in fam.members)
    is_interval = any(sorted(iv.members) == demo_words for iv in all_intervals(3))
    rep = build_hecke_module(fam, "pi")
    demo_max = 0
    for col in range(rep.dim):
        count = sum(
            1
            for mat in rep.pi
            if any(r != col for r in mat.column_support(col))
        )
        demo_max = max(demo_max, count)
    verdict = (
        "not isomorphic to any weak Bruhat interval module"
        if (all_chains and max_nonatt <= 1 and not is_interval and demo_max >= 2)
        else "witness failed"
    )
    return WitnessReport(
        size_three_intervals=len(size3),
        all_chains=all_chains,
        max_nonattacking_in_intervals=max_nonatt,
        demo_words_form_interval=is_interval,
        demo_max_nonattacking=demo_max,
        verdict=verdict,
    )


# ---------------------------------------------------------------------------
# report-producing check runner


@dataclass(frozen=True)
class CheckRecord:
    theorem: str
    shape: str
    verdict: str
    dims: str
    elapsed: float

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "shape": self.shape,
            "verdict": self.verdict,
            "dims": self.dims,
            "elapsed": round(self.elapsed, 6),
        }

    def as_text(self) -> str:
        return (
            f"{self.theorem:<24} {self.shape:<18} {self.verdict:<6} "
            f"{self.dims:<12} {self.elapsed:.3f}s"
        )


def _record(theorem: str, shape: str, fn: Callable[[], tuple[bool, str]]) -> CheckRecord:
    start = time.perf_counter()
    try:
        ok, dims = fn()
    except TheoremMismatch:
        ok, dims = False, "-"
    return CheckRecord(theorem, shape, "pass" if ok else "FAIL", dims, time.perf_counter() - start)


def default_worker_count() -> int:
    value = os.environ.get("DIAGMOD_THREADS", "1")
    try:
        return max(1, int(value))
    except ValueError:
        return 1


def run_harness(
    checks: Iterable[str] = ("all",),
    max_n: int = 5,
    workers: Optional[int] = None,
) -> list[CheckRecord]:
    """Run the named theorem checks up to the given size and collect records.

    Jobs are independent and pure; they run on a thread pool sized by
    ``workers`` (default: the DIAGMOD_THREADS environment variable, else 1)
    and the report order is deterministic regardless of scheduling.
    """
    wanted = set(checks)
    everything = "all" in wanted
    jobs: list[tuple[str, str, Callable[[], tuple[bool, str]]]] = []

    def job_rect(lam):
        def run():
            fam = build_family(FamilyKind.SSHT, lam)
            ok = check_rect_isomorphism(lam)
            return ok, f"dim={len(fam) * (1 << sum(lam))}"

        return run

    def job_transition(n):
        def run():
            peaks, _ = transition_to_peak_basis(n)
            return True, f"{len(peaks)}x{len(peaks)}"

        return run

    def job_positivity(alpha):
        def run():
            return check_Q_minus_S_positivity(alpha), "-"

        return run

    def job_inclusion(lam):
        def run():
            return check_schurQ_inclusion(lam), "-"

        return run

    def job_theta(kind, shape):
        def run():
            fam = build_family(kind, shape)
            return theta_matches_peak(fam), f"|family|={len(fam)}"

        return run

    def job_intervals(n):
        def run():
            count = 0
            for iv in all_intervals(n):
                build_interval_modules(iv)
                count += 1
            return True, f"{count} intervals"

        return run

    def job_relations(kind, shape):
        def run():
            fam = build_family(kind, shape)
            if not fam.members:
                return True, "empty"
            rep = build_hecke_module(fam, NATIVE_CONVENTION[kind])
            return verify_hecke_relations(rep).ok, f"dim={rep.dim}"

        return run

    def job_witness():
        def run():
            report = generalization_witness()
            return report.verdict != "witness failed", f"{report.size_three_intervals} intervals"

        return run

    if everything or "rect" in wanted:
        for n in range(1, max_n + 1):
            for lam in enumerate_strict_partitions(n):
                jobs.append(("rect-intertwiner", format_composition(lam), job_rect(lam)))
    if everything or "transition" in wanted:
        for n in range(1, max_n + 1):
            jobs.append(("peak-transition", str(n), job_transition(n)))
    if everything or "positivity" in wanted:
        for n in range(1, max_n + 1):
            for alpha in enumerate_peak_compositions(n):
                jobs.append(("peak-positivity", format_composition(alpha), job_positivity(alpha)))
    if everything or "schurq" in wanted:
        for n in range(1, max_n + 1):
            for lam in enumerate_strict_partitions(n):
                jobs.append(("symmetric-inclusion", format_composition(lam), job_inclusion(lam)))
    if everything or "theta" in wanted:
        for kind in FamilyKind:
            for n in range(1, max_n + 1):
                for shape in shapes_for(kind, n):
                    jobs.append(
                        (f"theta-{kind.value}", format_composition(shape), job_theta(kind, shape))
                    )
    if everything or "bruhat" in wanted:
        for n in range(1, min(max_n, 4) + 1):
            jobs.append(("interval-modules", f"S{n}", job_intervals(n)))
    if everything or "relations" in wanted:
        for kind in FamilyKind:
            for n in range(1, max_n + 1):
                for shape in shapes_for(kind, n):
                    jobs.append(
                        (
                            f"relations-{kind.value}",
                            format_composition(shape),
                            job_relations(kind, shape),
                        )
                    )
    if everything or "witness" in wanted:
        jobs.append(("interval-witness", "-", job_witness()))

    workers = workers if workers is not None else default_worker_count()
    if workers <= 1:
        return [_record(t, s, fn) for t, s, fn in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_record, t, s, fn) for t, s, fn in jobs]
        return [f.result() for f in futures]
