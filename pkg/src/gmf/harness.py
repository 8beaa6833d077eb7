"""Seeded property suites for the superadditivity, compression and Thompson inequalities.

Every suite takes a :class:`TrialConfig`, draws its random inputs from a
stream keyed by ``(seed, trial index)``, and returns a :class:`SuiteReport`.
A failing trial is recorded with its trial index, so it can be replayed by
rerunning with the same seed.

Margins are reported in relative form.  A scalar inequality ``lhs >= rhs``
has margin ``(lhs - rhs) / scale`` with ``scale = 1 + max |term|``.  A Loewner
inequality ``X >= Y`` has margin ``lambda_min(X - Y) / (1 + ||X - Y||_2)``.
In both cases a trial passes iff its margin is at least ``-tol``.  The
normalized Thompson bounds (``>= 1``) use the absolute margin ``value - 1``.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .errors import DecompositionError, ShapeError, ValidationError
from .induced import StarBasis, basis_for, compression_residual, induced_matrix
from .linalg import (BlockMatrix, as_matrix, complex_gaussian, determinant, hermitian_part,
                     kron_power, psd_check)
from .matfun import GmfSpec, block_gmf_map, det_m, evaluate
from .permgroup import Character, PermGroup

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
# tolerance for the Hermitian symmetry of computed GMF matrices, relative
_ASSEMBLED_HERM_TOL = 1e-9
# a GMF of a PSD matrix must be real to this relative tolerance
_IMAG_TOL = 1e-10
SINGULAR_RTOL = 1e-10
# block-diagonal inputs must give equality in Thompson's inequality
EQUALITY_TOL = 1e-8
FLOAT_DIGITS = 12

# cyclic schedule of input structures; mostly unstructured Gram draws
DRAW_KINDS = ("gram", "gram", "gram", "gram", "gram", "rank1", "lowrank", "blockdiag")


def loewner_geq(X, Y, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """``X >= Y`` in the Loewner order; returns ``(ok, lambda_min(X - Y))``."""
    X = as_matrix(X, square=True)
    Y = as_matrix(Y, square=True)
    if X.shape != Y.shape:
        raise ShapeError(f"cannot compare {X.shape} with {Y.shape}")
    return psd_check(X - Y, tol)


def _loewner_margin(X, Y) -> tuple[float, float]:
    """(relative margin, lambda_min) of ``X - Y``."""
    D = hermitian_part(as_matrix(X) - as_matrix(Y), tol=_ASSEMBLED_HERM_TOL)
    if D.shape[0] == 0:
        return float("inf"), float("inf")
    eig = np.linalg.eigvalsh(D)
    norm = max(abs(eig[0]), abs(eig[-1]))
    return float(eig[0] / (1.0 + norm)), float(eig[0])


def _scalar_margin(lhs: float, rhs: float, terms) -> float:
    scale = 1.0 + max(abs(t) for t in terms)
    return float((lhs - rhs) / scale)


def real_value(z: complex, what: str = "value") -> float:
    """Real part of a GMF value known to be real, after checking the imaginary part."""
    z = complex(z)
    if abs(z.imag) > _IMAG_TOL * (1.0 + abs(z.real)):
        raise ValidationError(f"{what} should be real, has imaginary part {z.imag:.3e}")
    return z.real


def _round(x: float) -> float:
    if not np.isfinite(x):
        return x
    return float(f"{x:.{FLOAT_DIGITS}g}")


def digest(*arrays) -> str:
    h = hashlib.sha256()
    for a in arrays:
        h.update(np.ascontiguousarray(np.asarray(a, dtype=np.complex128)).tobytes())
    return h.hexdigest()[:16]


@dataclass
class TrialConfig:
    """Shape, group data and sampling parameters of one suite run.

    ``m`` is the number of blocks and ``n`` the block (or matrix) size.  For
    suites that evaluate a GMF, ``n`` must equal the group degree.  ``k`` is
    the tensor power used by the Kronecker suite.
    """

    m: int = 2
    n: int = 2
    group: PermGroup | None = None
    character: Character | None = None
    trials: int = 100
    seed: int = 0
    tol: float = DEFAULT_TOL
    k: int = 2
    label: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.trials < 1:
            raise ValidationError(f"trials must be >= 1, got {self.trials}")
        if not self.tol > 0:
            raise ValidationError(f"tol must be positive, got {self.tol}")
        if self.m < 1 or self.n < 1 or self.k < 1:
            raise ValidationError("m, n and k must be >= 1")
        if (self.group is None) != (self.character is None):
            raise ValidationError("group and character must be given together")
        if self.character is not None and self.character.group != self.group:
            raise ValidationError("character is defined on a different group")

    def rng(self, trial: int) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence([self.seed, trial]))

    def spec(self) -> GmfSpec:
        if self.character is None:
            raise ValidationError("this suite needs a group and character")
        if self.character.group.degree != self.n:
            raise ShapeError(f"group degree {self.character.group.degree} != matrix size n={self.n}")
        return GmfSpec.from_character(self.character)

    def describe(self) -> dict:
        out = {"m": self.m, "n": self.n, "k": self.k, "trials": self.trials,
               "seed": self.seed, "tol": self.tol}
        if self.group is not None:
            out["group_degree"] = self.group.degree
            out["group_order"] = self.group.order
            out["character"] = self.character.name or [
                [_round(v.real), _round(v.imag)] for v in self.character.values]
        out.update(self.label)
        return out


@dataclass
class SuiteReport:
    suite: str
    config: dict
    trials: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)
    min_margin: float = float("inf")
    skipped: int = 0
    subcases: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, trial: int, case: str, margin: float, tol: float, witness: float, inputs: tuple):
        self.checks += 1
        self.subcases[case] = self.subcases.get(case, 0) + 1
        self.min_margin = min(self.min_margin, margin)
        if not margin >= -tol:
            self.failures.append({"seed_offset": trial, "case": case, "margin": _round(margin),
                                  "witness": _round(witness), "digest": digest(*inputs)})

    def to_dict(self) -> dict:
        d = asdict(self)
        d["min_margin"] = _round(self.min_margin) if np.isfinite(self.min_margin) else None
        d["passed"] = self.passed
        return d

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kwargs)


def _draw_gram(rng: np.random.Generator, size: int, kind: str, block: int | None = None) -> np.ndarray:
    if kind == "rank1":
        v = complex_gaussian(rng, (size, 1))
        M = v @ v.conj().T
    elif kind == "lowrank":
        R = complex_gaussian(rng, (max(1, size // 2), size))
        M = R.conj().T @ R
    elif kind == "blockdiag" and block is not None and block < size:
        M = np.zeros((size, size), dtype=np.complex128)
        for s in range(0, size, block):
            R = complex_gaussian(rng, (block, block))
            M[s:s + block, s:s + block] = R.conj().T @ R
    else:
        R = complex_gaussian(rng, (size, size))
        M = R.conj().T @ R
    return (M + M.conj().T) / 2


def draw_psd(rng: np.random.Generator, size: int, trial: int, block: int | None = None) -> np.ndarray:
    """A PSD matrix whose structure cycles with the trial index (see ``DRAW_KINDS``)."""
    return _draw_gram(rng, size, DRAW_KINDS[trial % len(DRAW_KINDS)], block)


def draw_block(rng: np.random.Generator, m: int, n: int, trial: int) -> BlockMatrix:
    return BlockMatrix.from_flat(draw_psd(rng, m * n, trial, block=n), n)


def _zero_like(M: np.ndarray) -> np.ndarray:
    return np.zeros_like(M)


def _real_gmf(spec: GmfSpec, A) -> float:
    return real_value(evaluate(spec, A), "GMF of a PSD matrix")


def _strong_superadd_scalar(report: SuiteReport, trial: int, case: str, f: Callable, A, B, C, tol: float):
    t1, t2, t3, t4 = f(A + B + C), f(C), f(A + C), f(B + C)
    margin = _scalar_margin(t1 + t2, t3 + t4, (t1, t2, t3, t4))
    report.record(trial, case, margin, tol, (t1 + t2) - (t3 + t4), (A, B, C))


def _strong_superadd_loewner(report: SuiteReport, trial: int, case: str, f: Callable, A, B, C, tol: float):
    lhs = f(A + B + C) + f(C)
    rhs = f(A + C) + f(B + C)
    margin, lam = _loewner_margin(lhs, rhs)
    if np.isfinite(margin):
        inputs = tuple(X.blocks if isinstance(X, BlockMatrix) else X for X in (A, B, C))
        report.record(trial, case, margin, tol, lam, inputs)


def suite_scalar_strong_superadd(cfg: TrialConfig) -> SuiteReport:
    """``d(A+B+C) + d(C) >= d(A+C) + d(B+C)`` for random PSD ``A, B, C``; sub-case ``C = 0``."""
    spec = cfg.spec()
    report = SuiteReport("scalar_strong_superadd", cfg.describe())
    f = lambda X: _real_gmf(spec, X)  # noqa: E731
    for t in range(cfg.trials):
        rng = cfg.rng(t)
        A, B, C = (draw_psd(rng, cfg.n, t + i) for i in range(3))
        _strong_superadd_scalar(report, t, "main", f, A, B, C, cfg.tol)
        _strong_superadd_scalar(report, t, "C=0", f, A, B, _zero_like(C), cfg.tol)
        report.trials += 1
    return report


def _gmf_image(spec: GmfSpec, blocks: BlockMatrix) -> np.ndarray:
    return hermitian_part(block_gmf_map(spec, blocks), tol=_ASSEMBLED_HERM_TOL)


def suite_css(cfg: TrialConfig) -> SuiteReport:
    """Blockwise strong superadditivity of the GMF map in the Loewner order."""
    spec = cfg.spec()
    report = SuiteReport("css", cfg.describe())
    phi = lambda X: _gmf_image(spec, X)  # noqa: E731
    zero = BlockMatrix(np.zeros((cfg.m, cfg.m, cfg.n, cfg.n)))
    for t in range(cfg.trials):
        rng = cfg.rng(t)
        A, B, C = (draw_block(rng, cfg.m, cfg.n, t + i) for i in range(3))
        _strong_superadd_loewner(report, t, "main", phi, A, B, C, cfg.tol)
        _strong_superadd_loewner(report, t, "C=0", phi, A, B, zero, cfg.tol)
        report.trials += 1
    return report


def suite_tensor_superadd(cfg: TrialConfig) -> SuiteReport:
    """Strong superadditivity of ``X -> X (x) ... (x) X`` (``k`` factors) on ``n x n`` PSD matrices."""
    report = SuiteReport("tensor_superadd", cfg.describe())
    f = lambda X: kron_power(X, cfg.k)  # noqa: E731
    for t in range(cfg.trials):
        rng = cfg.rng(t)
        A, B, C = (draw_psd(rng, cfg.n, t + i) for i in range(3))
        _strong_superadd_loewner(report, t, "main", f, A, B, C, cfg.tol)
        _strong_superadd_loewner(report, t, "C=0", f, A, B, _zero_like(C), cfg.tol)
        report.trials += 1
    return report


def suite_induced_superadd(cfg: TrialConfig) -> SuiteReport:
    """Strong superadditivity of ``X -> K(X)`` on ``n x n`` PSD matrices."""
    if cfg.character is None:
        raise ValidationError("induced suite needs a group and character")
    basis = basis_for(cfg.n, cfg.character)
    report = SuiteReport("induced_superadd", cfg.describe() | {"class_dim": basis.dim})
    if basis.dim == 0:
        log.info("empty symmetry class for %s; induced suite is vacuous", cfg.describe())
        report.skipped = cfg.trials
        return report
    f = lambda X: induced_matrix(X, basis)  # noqa: E731
    for t in range(cfg.trials):
        rng = cfg.rng(t)
        A, B, C = (draw_psd(rng, cfg.n, t + i) for i in range(3))
        _strong_superadd_loewner(report, t, "main", f, A, B, C, cfg.tol)
        _strong_superadd_loewner(report, t, "C=0", f, A, B, _zero_like(C), cfg.tol)
        report.trials += 1
    return report


def _detm(blocks: BlockMatrix) -> np.ndarray:
    return hermitian_part(det_m(blocks), tol=_ASSEMBLED_HERM_TOL)


def _det_real(M) -> float:
    return real_value(determinant(M), "determinant of a PSD matrix")


def suite_detm_superadd(cfg: TrialConfig) -> SuiteReport:
    """``det_m(A+B) >= det_m(A) + det_m(B)`` and its determinant form; sub-case ``B = 0``."""
    report = SuiteReport("detm_superadd", cfg.describe())
    zero = BlockMatrix(np.zeros((cfg.m, cfg.m, cfg.n, cfg.n)))
    for t in range(cfg.trials):
        rng = cfg.rng(t)
        A, B = draw_block(rng, cfg.m, cfg.n, t), draw_block(rng, cfg.m, cfg.n, t + 1)
        for case, Bc in (("main", B), ("B=0", zero)):
            DA, DB, DAB = _detm(A), _detm(Bc), _detm(A + Bc)
            margin, lam = _loewner_margin(DAB, DA + DB)
            report.record(t, f"{case}/loewner", margin, cfg.tol, lam, (A.blocks, Bc.blocks))
            terms = (_det_real(DAB), _det_real(DA), _det_real(DB))
            margin = _scalar_margin(terms[0], terms[1] + terms[2], terms)
            report.record(t, f"{case}/det", margin, cfg.tol, terms[0] - terms[1] - terms[2],
                          (A.blocks, Bc.blocks))
        report.trials += 1
    return report


def suite_complete_positivity(cfg: TrialConfig) -> SuiteReport:
    """The GMF map sends PSD block matrices to PSD matrices."""
    spec = cfg.spec()
    report = SuiteReport("complete_positivity", cfg.describe())
    for t in range(cfg.trials):
        rng = cfg.rng(t)
        A = draw_block(rng, cfg.m, cfg.n, t)
        kind = DRAW_KINDS[t % len(DRAW_KINDS)]
        margin, lam = _loewner_margin(_gmf_image(spec, A), np.zeros((cfg.m, cfg.m)))
        report.record(t, kind, margin, cfg.tol, lam, (A.blocks,))
        report.trials += 1
    return report


def block_cholesky(blocks: BlockMatrix, rtol: float = SINGULAR_RTOL) -> BlockMatrix:
    """Block upper-triangular ``T`` with ``A = T* T`` for positive definite ``A``.

    Diagonal blocks are upper-triangular Cholesky factors of the Schur
    complements; off-diagonal blocks solve ``T_ii^* T_ij = A_ij - sum_k T_ki^* T_kj``.
    """
    flat = hermitian_part(blocks.flatten(), tol=1e-10)
    eig = np.linalg.eigvalsh(flat)
    if eig[0] <= rtol * max(abs(eig[-1]), 1e-300):
        raise DecompositionError(f"matrix is not positive definite (lambda_min={eig[0]:.3e})")
    m, n = blocks.m, blocks.n
    A = BlockMatrix.from_flat(flat, n).blocks
    T = np.zeros_like(A)
    for i in range(m):
        S = A[i, i] - sum(T[k, i].conj().T @ T[k, i] for k in range(i))
        try:
            L = np.linalg.cholesky((S + S.conj().T) / 2)
        except np.linalg.LinAlgError as exc:
            raise DecompositionError(f"Schur complement at block {i} is not positive definite") from exc
        T[i, i] = L.conj().T
        for j in range(i + 1, m):
            R = A[i, j] - sum(T[k, i].conj().T @ T[k, j] for k in range(i))
            # T_ii^* is lower triangular
            T[i, j] = np.linalg.solve(L, R)
    return BlockMatrix(T)


def normalize_unit_diagonal(T: BlockMatrix) -> BlockMatrix:
    """``T diag(T_11^-1, ..., T_mm^-1)``, so every diagonal block is the identity."""
    inv = [np.linalg.inv(T[j, j]) for j in range(T.m)]
    out = np.array([[T[i, j] @ inv[j] for j in range(T.m)] for i in range(T.m)])
    return BlockMatrix(out)


def thompson_base_case(T12) -> tuple[float, float]:
    """For ``T = [[I, T12], [0, I]]``: ``(det(det_2(T*T)), det(I + T12* T12) - det(T12* T12))``."""
    T12 = as_matrix(T12, square=True)
    n = T12.shape[0]
    eye = np.eye(n)
    T = BlockMatrix(np.array([[eye, T12], [np.zeros((n, n)), eye]]))
    A = BlockMatrix.from_flat(T.flatten().conj().T @ T.flatten(), n)
    G = T12.conj().T @ T12
    lhs = _det_real(_detm(A))
    rhs = _det_real(eye + G) - _det_real(G)
    return lhs, rhs


def suite_thompson(cfg: TrialConfig) -> SuiteReport:
    """``det A <= det(det_m A)``, plus ``det(det_m(T*T)) >= 1`` after unit-diagonal normalization.

    Sub-cases: ``main`` (the inequality), ``reformulation`` (positive definite
    draws only; near-singular ones are counted in ``skipped``), ``base_case``
    (``m = 2`` identity) and ``offdiag=0`` (block diagonal, where equality holds).
    """
    report = SuiteReport("thompson", cfg.describe())
    for t in range(cfg.trials):
        rng = cfg.rng(t)
        A = draw_block(rng, cfg.m, cfg.n, t)
        flat = A.flatten()
        lhs, rhs = _det_real(_detm(A)), _det_real(flat)
        report.record(t, "main", _scalar_margin(lhs, rhs, (lhs, rhs)), cfg.tol, lhs - rhs, (A.blocks,))

        eig = np.linalg.eigvalsh(hermitian_part(flat))
        if eig[0] < SINGULAR_RTOL * eig[-1]:
            report.skipped += 1
        else:
            T = normalize_unit_diagonal(block_cholesky(A))
            Tf = T.flatten()
            value = _det_real(_detm(BlockMatrix.from_flat(Tf.conj().T @ Tf, cfg.n)))
            # normalized quantity: the lower bound 1 is checked in absolute terms
            report.record(t, "reformulation", value - 1.0, cfg.tol, value - 1.0, (A.blocks,))
            if cfg.m == 2:
                lhs2, rhs2 = thompson_base_case(T[0, 1])
                identity_gap = abs(lhs2 - rhs2) / (1.0 + max(abs(lhs2), abs(rhs2)))
                report.record(t, "base_case/identity", -identity_gap, cfg.tol, lhs2 - rhs2, (A.blocks,))
                report.record(t, "base_case/geq1", rhs2 - 1.0, cfg.tol, rhs2 - 1.0, (A.blocks,))

        D = BlockMatrix(A.blocks * np.eye(cfg.m)[:, :, None, None])
        lhs, rhs = _det_real(_detm(D)), _det_real(D.flatten())
        gap = abs(lhs - rhs) / (1.0 + max(abs(lhs), abs(rhs)))
        report.record(t, "offdiag=0", -gap, EQUALITY_TOL, lhs - rhs, (D.blocks,))
        report.trials += 1
    return report


def suite_compression(cfg: TrialConfig) -> SuiteReport:
    """``[K(A_ij)] = Q^* K(A) Q`` on random PSD block matrices; margin is minus the residual."""
    if cfg.character is None:
        raise ValidationError("compression suite needs a group and character")
    basis = basis_for(cfg.n, cfg.character)
    report = SuiteReport("compression", cfg.describe() | {"class_dim": basis.dim})
    for t in range(cfg.trials):
        rng = cfg.rng(t)
        A = draw_block(rng, cfg.m, cfg.n, t)
        residual = compression_residual(A, basis)
        report.record(t, "main", -residual, cfg.tol, residual, (A.blocks,))
        report.trials += 1
    return report


SUITES: dict[str, Callable[[TrialConfig], SuiteReport]] = {
    "scalar": suite_scalar_strong_superadd,
    "css": suite_css,
    "tensor": suite_tensor_superadd,
    "induced": suite_induced_superadd,
    "detm": suite_detm_superadd,
    "cp": suite_complete_positivity,
    "thompson": suite_thompson,
    "compression": suite_compression,
}

# suites that apply a GMF of the configured group to n x n matrices
GMF_SUITES = frozenset({"scalar", "css", "cp"})
# suites that need a group and character at all
CHARACTER_SUITES = GMF_SUITES | {"induced", "compression"}


def run_suite(name: str, cfg: TrialConfig) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValidationError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}") from None
    return fn(cfg)
