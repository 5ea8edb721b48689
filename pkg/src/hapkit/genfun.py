"""Generating functionals and their convolution semigroups.

A generating functional is given blockwise: one complex matrix per label,
vanishing at the unit (zero trivial block).  It is *symmetric* when every
block is self-adjoint, in which case the blocks are automatically positive
whenever they generate a semigroup of states; it is *proper at level M*
when all but finitely many blocks dominate M times the identity.

The associated semigroup of functionals has blocks exp(-t * L^a); symmetry
plus properness makes those families decay across labels while converging
to the identity at each fixed label, which is the engine behind every
certification in this package.

Also here: the classical sum-of-states construction L = sum_n beta_n
(counit - mu_n), recovery of the generator from small-time semigroup
samples, and the unit shift L + (counit - haar) that pushes every
nontrivial block above the identity.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Mapping, NamedTuple

import numpy as np

from . import _linalg
from .fourier import DEFAULT_TOL, MatrixFamily, NORMALIZED_ATOL

logger = logging.getLogger(__name__)


class GeneratingFunctional:
    """Blockwise generating functional: label -> matrix, zero at the unit.

    The trivial block is always present and identically zero; supplying a
    nonzero trivial block is an error.  Nontrivial labels may be left
    unspecified, in which case nothing is claimed about them.
    """

    def __init__(self, table, blocks: Mapping):
        store: dict = {}
        for label in table.labels:
            if label in blocks:
                store[label] = _linalg.as_block(blocks[label], table.dim(label))
        if len(store) != len(blocks):
            extra = [k for k in blocks if k not in store]
            raise KeyError(f"blocks supplied for labels outside the table: {extra!r}")
        triv = store.get(table.trivial)
        if triv is not None and np.any(triv != 0):
            raise ValueError("generating functional must vanish at the unit")
        if triv is None:
            # store was built in table order (trivial first), so prepending keeps it canonical
            zero = np.zeros((1, 1), dtype=np.complex128)
            zero.setflags(write=False)
            store = {table.trivial: zero, **store}
        self.table = table
        self.blocks = MappingProxyType(store)

    @property
    def support(self) -> frozenset:
        return frozenset(self.blocks)

    @property
    def labels(self) -> tuple:
        return tuple(self.blocks)

    def block(self, label) -> np.ndarray:
        try:
            return self.blocks[label]
        except KeyError:
            raise KeyError(f"no block at label {self.table.encode(label)!r}") from None

    def __repr__(self) -> str:
        return f"GeneratingFunctional({len(self.blocks)}/{len(self.table)} blocks)"


class SymmetryCheck(NamedTuple):
    ok: bool
    residual: float


class PositivityCheck(NamedTuple):
    ok: bool
    min_eigenvalue: float


def check_symmetric(L: GeneratingFunctional, tol: float = DEFAULT_TOL) -> SymmetryCheck:
    """Largest operator-norm distance of any block from its adjoint."""
    worst = 0.0
    for lab in L.labels:
        worst = max(worst, _linalg.hermitian_residual(L.blocks[lab]))
    return SymmetryCheck(worst <= tol, worst)


def check_positive_blocks(L: GeneratingFunctional, tol: float = DEFAULT_TOL) -> PositivityCheck:
    """Smallest eigenvalue over all blocks; requires a symmetric functional."""
    sym = check_symmetric(L, tol if tol > 0 else DEFAULT_TOL)
    if not sym.ok:
        raise ValueError(f"positivity check needs symmetric blocks "
                         f"(Hermitian residual {sym.residual:g})")
    worst = math.inf
    for lab in L.labels:
        worst = min(worst, _linalg.min_eigenvalue(L.blocks[lab]))
    return PositivityCheck(worst >= -tol, worst)


@dataclass(frozen=True)
class PropernessResult:
    """Labels failing the block bound >= M*I within one truncation.

    ``proper_at_level`` only ever asserts properness *relative to the
    truncation*: the exceptional set is finite there by construction, so the
    meaningful content is that at least one block was certified above M.
    """

    level: float
    exceptional: tuple  # pairs (label, min eigenvalue)
    unspecified: tuple
    table_size: int

    @property
    def exceptional_labels(self) -> tuple:
        return tuple(lab for lab, _ in self.exceptional)

    @property
    def certified_count(self) -> int:
        return self.table_size - len(self.exceptional) - len(self.unspecified)

    @property
    def proper_at_level(self) -> bool:
        return self.certified_count > 0


def check_proper(L: GeneratingFunctional, M: float) -> PropernessResult:
    """Exceptional set of a symmetric functional at threshold M."""
    if M <= 0:
        raise ValueError("threshold M must be positive")
    sym = check_symmetric(L)
    if not sym.ok:
        raise ValueError(f"properness is defined for symmetric functionals "
                         f"(Hermitian residual {sym.residual:g})")
    exceptional = []
    for lab in L.labels:
        low = _linalg.min_eigenvalue(L.blocks[lab])
        if low < M:
            exceptional.append((lab, low))
    unspecified = tuple(lab for lab in L.table.labels if lab not in L.blocks)
    return PropernessResult(
        level=M,
        exceptional=tuple(exceptional),
        unspecified=unspecified,
        table_size=len(L.table),
    )


def semigroup_at(L: GeneratingFunctional, t: float) -> MatrixFamily:
    """Family of the convolution semigroup at time t: blocks exp(-t * L^a).

    Hermitian blocks are exponentiated by eigendecomposition, anything else
    by scaling-and-squaring.  The result is a normalized family supported
    where L is.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    blocks = {L.table.trivial: np.ones((1, 1), dtype=np.complex128)}
    for lab in L.labels:
        if lab == L.table.trivial:
            continue
        blocks[lab] = _linalg.expm_neg(L.blocks[lab], t)
    return MatrixFamily(L.table, blocks, normalized=True)


def shift_unit(L: GeneratingFunctional) -> GeneratingFunctional:
    """Add the identity to every nontrivial block (convolving in counit - haar)."""
    blocks = {}
    for lab in L.labels:
        if lab == L.table.trivial:
            continue
        blocks[lab] = L.blocks[lab] + np.eye(L.table.dim(lab))
    return GeneratingFunctional(L.table, blocks)


def unit_shift_functional(table) -> GeneratingFunctional:
    """The functional counit - haar: identity at every nontrivial label."""
    blocks = {lab: np.eye(table.dim(lab), dtype=np.complex128)
              for lab in table.labels if lab != table.trivial}
    return GeneratingFunctional(table, blocks)


def default_schedule(n_terms: int) -> tuple[list[float], list[float]]:
    """Weights beta_n = 2^n and targets eps_n = 8^-n, so sum(beta*eps) < inf."""
    betas = [2.0 ** n for n in range(1, n_terms + 1)]
    eps = [8.0 ** -n for n in range(1, n_terms + 1)]
    return betas, eps


def _is_default_schedule(betas, eps) -> bool:
    ref_b, ref_e = default_schedule(len(betas))
    return list(betas) == ref_b and list(eps) == ref_e


@dataclass(frozen=True)
class BuildReport:
    """Certificate data for the sum-of-states construction."""

    schedule: tuple[tuple[float, float], ...]  # (beta_n, eps_n) pairs
    tail_bound: float | None
    first_certified: Mapping  # label -> first n with the bound holding onward, or None
    flagged: tuple  # labels where no suffix of the supplied range certifies
    f_sets: tuple  # per n, frozenset of labels with ||I - block_n|| <= eps_n


def build_from_states(seq, betas=None, eps=None,
                      tail_bound: float | None = None) -> tuple[GeneratingFunctional, BuildReport]:
    """Assemble L = sum_n beta_n (counit - mu_n) over a finite range.

    ``betas`` must be positive and increasing, ``eps`` positive and
    decreasing; the defaults are beta_n = 2^n, eps_n = 8^-n, whose tail
    sum_{n>N} beta_n*eps_n = 4^-N / 3 is reported as the truncation-error
    certificate.  For each label the report records the first index from
    which ||I - block_n|| <= eps_n holds for the whole remaining range;
    labels where no such index exists are flagged (the epsilon certificate
    cannot be extended for them), but the finite sum is still returned.
    """
    seq = list(seq)
    if not seq:
        raise ValueError("empty state sequence")
    if betas is None or eps is None:
        if betas is not None or eps is not None:
            raise ValueError("supply both betas and eps, or neither")
        betas, eps = default_schedule(len(seq))
    betas = [float(b) for b in betas]
    eps = [float(e) for e in eps]
    if not (len(betas) == len(eps) == len(seq)):
        raise ValueError("betas and eps must align with the state sequence")
    if any(b <= 0 for b in betas) or any(b2 <= b1 for b1, b2 in zip(betas, betas[1:])):
        raise ValueError("betas must be positive and increasing")
    if any(e <= 0 for e in eps) or any(e2 >= e1 for e1, e2 in zip(eps, eps[1:])):
        raise ValueError("eps must be positive and decreasing")
    table = seq[0].table
    for F in seq:
        if F.table is not table and F.table != table:
            raise ValueError("state families live over different tables")
        triv = F.blocks.get(table.trivial)
        if triv is None or abs(complex(triv[0, 0]) - 1.0) > NORMALIZED_ATOL:
            raise ValueError("state families must be normalized (trivial block [1])")

    support = [lab for lab in table.labels
               if all(lab in F.blocks for F in seq) and lab != table.trivial]
    deviations = {
        lab: [_linalg.spectral_norm(np.eye(table.dim(lab)) - F.blocks[lab]) for F in seq]
        for lab in support
    }
    blocks = {}
    for lab in support:
        dim = table.dim(lab)
        acc = np.zeros((dim, dim), dtype=np.complex128)
        eye = np.eye(dim)
        for b, F in zip(betas, seq):
            acc = acc + b * (eye - F.blocks[lab])
        blocks[lab] = acc

    first_certified = {}
    flagged = []
    for lab in support:
        devs = deviations[lab]
        idx = None
        for n0 in range(len(seq)):
            if all(devs[n] <= eps[n] for n in range(n0, len(seq))):
                idx = n0 + 1  # 1-based index into the schedule
                break
        first_certified[lab] = idx
        if idx is None:
            flagged.append(lab)
    if flagged:
        logger.info("build_from_states: epsilon certificate impossible for %d labels",
                    len(flagged))
    f_sets = tuple(
        frozenset(lab for lab in support if deviations[lab][n] <= eps[n])
        for n in range(len(seq))
    )
    if tail_bound is None and _is_default_schedule(betas, eps):
        tail_bound = 4.0 ** -len(seq) / 3.0

    report = BuildReport(
        schedule=tuple(zip(betas, eps)),
        tail_bound=tail_bound,
        first_certified=MappingProxyType(first_certified),
        flagged=tuple(flagged),
        f_sets=f_sets,
    )
    return GeneratingFunctional(table, blocks), report


def generator_from_semigroup(sampler: Callable[[float], MatrixFamily],
                             t_small) -> tuple[GeneratingFunctional, dict]:
    """Recover the generator from small-time samples of its semigroup.

    Evaluates the difference quotients (I - block(t)) / t and extrapolates
    them to t -> 0 through the Lagrange polynomial at the supplied nodes
    (Richardson extrapolation; two nodes in ratio 2 give the classical
    2*D(t/2) - D(t) rule).  Returns the estimate together with a per-label
    error proxy: the distance from the extrapolant to the smallest-t
    quotient.
    """
    t_small = [float(t) for t in t_small]
    if len(t_small) < 2:
        raise ValueError("need at least two sample times")
    if any(t <= 0 for t in t_small) or len(set(t_small)) != len(t_small):
        raise ValueError("sample times must be positive and distinct")
    samples = [sampler(t) for t in t_small]
    table = samples[0].table
    for F in samples[1:]:
        if F.table is not table and F.table != table:
            raise ValueError("sampler returned families over different tables")
    weights = []
    for i, ti in enumerate(t_small):
        w = 1.0
        for j, tj in enumerate(t_small):
            if j != i:
                w *= tj / (tj - ti)
        weights.append(w)
    i_min = min(range(len(t_small)), key=lambda i: t_small[i])

    blocks = {}
    errors = {}
    common = [lab for lab in table.labels
              if lab != table.trivial and all(lab in F.blocks for F in samples)]
    for lab in common:
        dim = table.dim(lab)
        eye = np.eye(dim)
        quotients = [(eye - F.blocks[lab]) / t for F, t in zip(samples, t_small)]
        est = sum(w * q for w, q in zip(weights, quotients))
        blocks[lab] = est
        errors[lab] = _linalg.spectral_norm(est - quotients[i_min])
    return GeneratingFunctional(table, blocks), errors
