"""Matrix families of functionals and their convolution calculus.

A functional mu on the coefficient algebra of a compact quantum group is
seen here only through its matrix coefficients: one n_a x n_a complex block
mu(u^a_{ij}) per irreducible corepresentation a.  Under this transform,
convolution of functionals is blockwise matrix multiplication, the counit is
the identity family, and the Haar state is 1 at the trivial label and 0
elsewhere.

The discrete dual has the Haagerup property exactly when there are states
whose families vanish at infinity across labels (c0 decay) while converging
to the identity block at each fixed label; ``check_hap_sequence`` certifies
both conditions, plus an optional uniform damping bound, within a finite
truncation of the label set.

Blocks that a family does not carry are *unspecified*, never implicitly
zero: operations restrict to support intersections, so no decay is ever
fabricated for labels nobody supplied.
"""

from __future__ import annotations

import hashlib
import logging
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from . import _linalg
from .reports import CertificationReport, ConditionVerdict, Witness

logger = logging.getLogger(__name__)

NORMALIZED_ATOL = 1e-9
DEFAULT_TOL = 1e-9


class MatrixFamily:
    """Label -> complex block map over a fixed table.

    Immutable after construction: blocks are stored read-only in canonical
    table order, so families can be shared freely between threads and
    serialized reproducibly.  ``normalized`` asserts that the trivial block
    is the 1x1 matrix [1].
    """

    def __init__(self, table, blocks: Mapping, normalized: bool = False):
        store: dict = {}
        for label in table.labels:
            if label in blocks:
                store[label] = _linalg.as_block(blocks[label], table.dim(label))
        if len(store) != len(blocks):
            extra = [k for k in blocks if k not in store]
            raise KeyError(f"blocks supplied for labels outside the table: {extra!r}")
        if normalized:
            triv = store.get(table.trivial)
            if triv is None or abs(triv[0, 0] - 1.0) > NORMALIZED_ATOL:
                raise ValueError("normalized family must carry trivial block [1]")
        self.table = table
        self.blocks = MappingProxyType(store)
        self.normalized = normalized

    @property
    def support(self) -> frozenset:
        return frozenset(self.blocks)

    @property
    def labels(self) -> tuple:
        """Supported labels in canonical table order."""
        return tuple(self.blocks)

    def block(self, label) -> np.ndarray:
        try:
            return self.blocks[label]
        except KeyError:
            raise KeyError(f"no block at label {self.table.encode(label)!r}") from None

    def __repr__(self) -> str:
        return (f"MatrixFamily({len(self.blocks)}/{len(self.table)} blocks"
                f"{', normalized' if self.normalized else ''})")


def _require_same_table(F: MatrixFamily, G) -> None:
    if F.table is not G.table and F.table != G.table:
        raise ValueError("operands live over different tables")


def convolve(F: MatrixFamily, G: MatrixFamily) -> MatrixFamily:
    """Blockwise product: the convolution of the underlying functionals.

    The result is supported on the intersection of the supports; labels
    missing from either operand are dropped (and logged), not zero-filled.
    """
    _require_same_table(F, G)
    common = [lab for lab in F.labels if lab in G.blocks]
    omitted = (F.support | G.support) - set(common)
    if omitted:
        logger.info("convolve: %d labels outside common support omitted", len(omitted))
    blocks = {lab: F.blocks[lab] @ G.blocks[lab] for lab in common}
    return MatrixFamily(F.table, blocks, normalized=F.normalized and G.normalized)


def counit_family(table) -> MatrixFamily:
    """Identity block at every label: the two-sided convolution identity."""
    blocks = {lab: np.eye(table.dim(lab), dtype=np.complex128) for lab in table.labels}
    return MatrixFamily(table, blocks, normalized=True)


def haar_family(table) -> MatrixFamily:
    """[1] at the trivial label, zero elsewhere: absorbing for convolution."""
    blocks = {
        lab: (np.ones((1, 1), dtype=np.complex128) if lab == table.trivial
              else np.zeros((table.dim(lab),) * 2, dtype=np.complex128))
        for lab in table.labels
    }
    return MatrixFamily(table, blocks, normalized=True)


def block_norm(F: MatrixFamily, label) -> float:
    """Spectral norm of the block at ``label``."""
    return _linalg.spectral_norm(F.block(label))


def max_block_deviation(F: MatrixFamily, G: MatrixFamily) -> float:
    """Largest spectral-norm difference over the common support."""
    _require_same_table(F, G)
    worst = 0.0
    for lab in F.labels:
        if lab in G.blocks:
            worst = max(worst, _linalg.spectral_norm(F.blocks[lab] - G.blocks[lab]))
    return worst


@dataclass(frozen=True)
class C0Result:
    """Outcome of a c0-decay scan at one threshold."""

    eps: float
    exceptional: tuple
    unspecified: tuple
    tail_clean: bool
    table_size: int

    @property
    def complement_size(self) -> int:
        """Labels verified at or below eps."""
        return self.table_size - len(self.exceptional) - len(self.unspecified)


def check_c0(F: MatrixFamily, eps: float) -> C0Result:
    """Labels whose block norm exceeds ``eps``.

    ``tail_clean`` records whether every remaining table label actually
    carries a block that was verified <= eps; unspecified labels make the
    scan inconclusive outside the support and are listed separately.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    exceptional = []
    for lab in F.labels:
        blk = F.blocks[lab]
        # Frobenius dominates the spectral norm: cheap accept before an SVD.
        if _linalg.frobenius_norm(blk) <= eps:
            continue
        if _linalg.spectral_norm(blk) > eps:
            exceptional.append(lab)
    unspecified = tuple(lab for lab in F.table.labels if lab not in F.blocks)
    return C0Result(
        eps=eps,
        exceptional=tuple(exceptional),
        unspecified=unspecified,
        tail_clean=not unspecified,
        table_size=len(F.table),
    )


@dataclass(frozen=True)
class StateCandidate:
    """Necessary state conditions only; full positivity is not decided."""

    ok: bool
    trivial_deviation: float
    worst_norm: float
    worst_label: str
    detail: str = ("necessary conditions only: trivial block [1] and "
                   "contractive blocks; positivity of the functional is not decided")

    def __bool__(self) -> bool:
        return self.ok


def is_state_candidate(F: MatrixFamily, tol: float = DEFAULT_TOL) -> StateCandidate:
    """True iff the trivial block is [1] within tol and all norms are <= 1+tol."""
    triv = F.blocks.get(F.table.trivial)
    trivial_dev = math.inf if triv is None else abs(complex(triv[0, 0]) - 1.0)
    worst_norm = 0.0
    worst_label = ""
    for lab in F.labels:
        nrm = block_norm(F, lab)
        if nrm > worst_norm:
            worst_norm, worst_label = nrm, F.table.encode(lab)
    ok = trivial_dev <= tol and worst_norm <= 1.0 + tol
    return StateCandidate(ok, trivial_dev, worst_norm, worst_label)


def family_content_digest(families, table=None) -> str:
    """Content hash of a family sequence (canonical label order)."""
    h = hashlib.sha256()
    if families:
        table = table or families[0].table
    if table is not None:
        for lab in table.labels:
            h.update(table.encode(lab).encode())
            h.update(str(table.dim(lab)).encode())
    for F in families:
        for lab in F.labels:
            h.update(F.table.encode(lab).encode())
            h.update(np.ascontiguousarray(F.blocks[lab]).tobytes())
    return "sha256:" + h.hexdigest()


def _c0_verdict(res: C0Result, table, ctx: str):
    """Classify one c0 scan: (ok, witness).

    Decay is only demandable at nontrivial labels (the trivial block of a
    state is always 1, it just sits inside the finite exceptional set), so
    the scan passes when the tail is verified and either the table has no
    nontrivial labels at all or at least one of them decayed below eps.
    """
    if not res.tail_clean:
        return False, Witness(
            label=table.encode(res.unspecified[0]),
            achieved=float(len(res.unspecified)), threshold=0.0,
            context=f"{ctx}: labels without blocks")
    nontrivial_total = len(table) - 1
    exc = len(res.exceptional)
    nontrivial_exc = sum(1 for lab in res.exceptional if lab != table.trivial)
    if nontrivial_total > 0 and nontrivial_exc >= nontrivial_total:
        return False, Witness(
            label="*", achieved=float(exc), threshold=float(nontrivial_total),
            context=f"{ctx}: no nontrivial label decayed below eps")
    return True, Witness(
        label="*", achieved=float(exc), threshold=float(len(table)),
        context=f"{ctx}: exceptional labels within truncation")


def _c0_condition(families, table, eps_decay, k_labels=None) -> ConditionVerdict:
    """Shared c0 verdict: finite exceptional set, tail-clean, some decay seen."""
    witnesses = []
    passed = True
    worst = None
    for idx, F in enumerate(families):
        ctx = f"family {k_labels[idx] if k_labels else idx}"
        res = check_c0(F, eps_decay)
        ok, witness = _c0_verdict(res, table, ctx)
        if not ok:
            passed = False
            witnesses.append(witness)
        elif worst is None or witness.achieved > worst.achieved:
            worst = witness
    if passed and worst is not None:
        witnesses = [worst]
    return ConditionVerdict(
        name="c0-decay", passed=passed, witnesses=tuple(witnesses),
        summary=f"block norms above eps_decay form a finite set, tail verified <= {eps_decay:g}")


def check_hap_sequence(seq, eps_decay: float, conv_tols, k_values=None,
                       tol: float = DEFAULT_TOL,
                       input_digest: str | None = None) -> CertificationReport:
    """Certify the two approximate-identity conditions on a state sequence.

    (a) each family decays: the labels with block norm > ``eps_decay`` are a
        finite set inside the truncation and every other table label was
        verified below the threshold;
    (b) each family is close to the counit: for every label,
        ||block_k - I|| <= conv_tols[k], with the tolerance schedule
        nonincreasing toward zero;
    (c) optionally, when ``k_values`` is supplied, the uniform damping bound
        ||block|| <= exp(-1/k) + tol at every nontrivial label.

    Failures are reported with witnesses, never raised.
    """
    seq = list(seq)
    if not seq:
        raise ValueError("empty family sequence")
    table = seq[0].table
    for F in seq[1:]:
        _require_same_table(seq[0], F)
    conv_tols = [float(x) for x in conv_tols]
    if len(conv_tols) != len(seq):
        raise ValueError("conv_tols must align with the family sequence")
    if k_values is not None and len(k_values) != len(seq):
        raise ValueError("k_values must align with the family sequence")
    k_labels = [f"k={k}" for k in k_values] if k_values else [f"#{i}" for i in range(len(seq))]

    conditions = [_c0_condition(seq, table, eps_decay, k_labels)]

    witnesses_b = []
    passed_b = True
    if any(b > a for a, b in zip(conv_tols, conv_tols[1:])):
        passed_b = False
        witnesses_b.append(Witness(label="*", achieved=max(conv_tols), threshold=conv_tols[0],
                                   context="conv_tols schedule is not nonincreasing"))
    worst_b = None
    for idx, F in enumerate(seq):
        thr = conv_tols[idx]
        for lab in table.labels:
            blk = F.blocks.get(lab)
            if blk is None:
                passed_b = False
                witnesses_b.append(Witness(label=table.encode(lab), achieved=math.inf,
                                           threshold=thr,
                                           context=f"family {k_labels[idx]}: block unspecified"))
                continue
            dev = _linalg.spectral_norm(blk - np.eye(blk.shape[0]))
            if dev > thr:
                passed_b = False
                witnesses_b.append(Witness(label=table.encode(lab), achieved=dev,
                                           threshold=thr, context=f"family {k_labels[idx]}"))
            elif worst_b is None or dev - thr > worst_b[0]:
                worst_b = (dev - thr, Witness(label=table.encode(lab), achieved=dev,
                                              threshold=thr, context=f"family {k_labels[idx]}"))
    if passed_b and worst_b is not None:
        witnesses_b = [worst_b[1]]
    conditions.append(ConditionVerdict(
        name="identity-convergence", passed=passed_b, witnesses=tuple(witnesses_b),
        summary="||block - I|| within the per-family tolerance schedule"))

    if k_values is not None:
        witnesses_c = []
        passed_c = True
        worst_c = None
        for idx, (F, k) in enumerate(zip(seq, k_values)):
            bound = math.exp(-1.0 / k) + tol
            for lab in F.labels:
                if lab == table.trivial:
                    continue
                nrm = block_norm(F, lab)
                if nrm > bound:
                    passed_c = False
                    witnesses_c.append(Witness(label=table.encode(lab), achieved=nrm,
                                               threshold=bound, context=f"family {k_labels[idx]}"))
                elif worst_c is None or nrm - bound > worst_c[0]:
                    worst_c = (nrm - bound, Witness(label=table.encode(lab), achieved=nrm,
                                                    threshold=bound,
                                                    context=f"family {k_labels[idx]}"))
        if passed_c and worst_c is not None:
            witnesses_c = [worst_c[1]]
        conditions.append(ConditionVerdict(
            name="damped-norm-bound", passed=passed_c, witnesses=tuple(witnesses_c),
            summary="nontrivial block norms <= exp(-1/k) + tol"))

    tolerances = [("tol", tol), ("eps_decay", eps_decay)]
    return CertificationReport(
        command="certify-hap",
        input_digest=input_digest or family_content_digest(seq, table),
        truncation=f"{len(table)} labels",
        tolerances=tuple(tolerances),
        conditions=tuple(conditions),
        notes=(f"conv_tols: {', '.join(f'{x:g}' for x in conv_tols)}",)
        + ((f"k_values: {', '.join(str(k) for k in k_values)}",) if k_values else ()),
    )
