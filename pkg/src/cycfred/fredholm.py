"""Finitely summable Fredholm modules on finite-dimensional Hilbert spaces.

A module over an algebra A is (rep, F, m, gamma): one representation matrix
per basis element of A, a self-adjoint involution F, the summability degree
m, and a grading gamma that is present exactly when m - 1 is even (m odd).
The representation extends to the unitalization A~ by sending the adjoined
unit to the identity matrix.

The central object is the index cocycle

    tau(x0, ..., x_{m-1}) = 1/2 Tr(gamma^m F [F, x0] ... [F, x_{m-1}])

a degree-(m-1) cochain over A~ whose class is the Chern-Connes character.
Schatten conditions are automatic in finite dimensions; the module records
the m-Schatten norms of the commutators anyway, as the continuity data of
the Banach-algebra picture.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import Algebra, unitalize, validate_algebra
from .cyclic import Cochain, TotalCochain, total_from_top, _check_budget
from .errors import InputError

STRUCTURAL_TOL = 1e-10


def operator_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, 2)) if a.size else 0.0


def schatten_norm(a: np.ndarray, p: float) -> float:
    """p-Schatten norm (sum of p-th powers of singular values)^(1/p)."""
    if p < 1:
        raise InputError("Schatten exponent must be >= 1")
    sv = np.linalg.svd(a, compute_uv=False)
    return float((sv ** p).sum() ** (1.0 / p))


@dataclass(frozen=True, eq=False)
class FredholmModule:
    algebra: Algebra
    rep: np.ndarray          # shape (dim_A, n, n)
    F: np.ndarray            # shape (n, n)
    m: int
    gamma: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.m < 1:
            raise InputError("summability degree m must be a positive integer")
        n = self.F.shape[0]
        if self.F.shape != (n, n):
            raise InputError("F must be square")
        if self.rep.shape != (self.algebra.dim, n, n):
            raise InputError("rep must hold one n x n matrix per basis element")
        if self.graded and self.gamma is None:
            raise InputError(f"m = {self.m} (even dimension) requires a grading operator")
        if not self.graded and self.gamma is not None:
            raise InputError(f"m = {self.m} (odd dimension) must not carry a grading operator")

    @property
    def n(self) -> int:
        return self.F.shape[0]

    @property
    def graded(self) -> bool:
        # dimension m - 1 even <=> m odd <=> graded
        return self.m % 2 == 1

    @property
    def gamma_eff(self) -> np.ndarray:
        """gamma^m: the grading for odd m, the identity otherwise."""
        return self.gamma if self.graded else np.eye(self.n, dtype=complex)


@dataclass(frozen=True)
class SchattenReport:
    """Norm data of the generators: the continuity record of the module."""

    m: int
    commutator_norms: tuple      # ||[F, rep(e_i)]||_m per generator
    operator_norms: tuple        # ||rep(e_i)|| per generator
    combined_norms: tuple        # ||rep(e_i)|| + ||[F, rep(e_i)]||_m

    @property
    def max_commutator_norm(self) -> float:
        return max(self.commutator_norms) if self.commutator_norms else 0.0


def rep_tilde(module: FredholmModule, x) -> np.ndarray:
    """Representation of an element of the unitalization A~."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (module.algebra.dim + 1,):
        raise InputError("rep_tilde expects a coefficient vector over the unitalization")
    return np.tensordot(x[:-1], module.rep, axes=(0, 0)) + x[-1] * np.eye(module.n)


def commutators_tilde(module: FredholmModule) -> np.ndarray:
    """[F, rep(e_i)] over the basis of A~ (zero in the adjoined-unit slot)."""
    d = module.algebra.dim
    out = np.zeros((d + 1, module.n, module.n), dtype=complex)
    for i in range(d):
        out[i] = module.F @ module.rep[i] - module.rep[i] @ module.F
    return out


def schatten_report(module: FredholmModule, F: Optional[np.ndarray] = None) -> SchattenReport:
    F = module.F if F is None else F
    comm, op, both = [], [], []
    for i in range(module.algebra.dim):
        c = schatten_norm(F @ module.rep[i] - module.rep[i] @ F, module.m)
        o = operator_norm(module.rep[i])
        comm.append(c)
        op.append(o)
        both.append(o + c)
    return SchattenReport(module.m, tuple(comm), tuple(op), tuple(both))


def validate_module(module: FredholmModule, tol: float = STRUCTURAL_TOL) -> dict:
    """Report-only validation of the module axioms.

    Checks F = F*, F^2 = 1, that rep is an algebra homomorphism, the grading
    relations in the graded case, and that both eigenspaces of gamma (graded)
    or of F (ungraded) are nonzero.  The last condition stands in for the
    usual infinite-dimensionality assumption, which no finite-dimensional
    module can meet; the report carries a warning to that effect.
    """
    F = module.F
    n = module.n
    checks = {}
    checks["F_selfadjoint"] = operator_norm(F - F.conj().T)
    checks["F_involutive"] = operator_norm(F @ F - np.eye(n))

    # max-abs entry residual, batched per left factor; spectral norms per
    # pair would cost dim^2 SVDs and add nothing at these tolerances
    s = module.algebra.structure
    hom = 0.0
    for i in range(module.algebra.dim):
        products = module.rep[i] @ module.rep
        expected = np.einsum("jk,kab->jab", s[i], module.rep)
        hom = max(hom, float(np.abs(products - expected).max()))
    checks["rep_homomorphism"] = hom

    if module.graded:
        g = module.gamma
        checks["gamma_involutive"] = operator_norm(g @ g - np.eye(n))
        checks["gamma_F_anticommute"] = operator_norm(g @ F + F @ g)
        checks["gamma_rep_commute"] = max(
            operator_norm(g @ module.rep[i] - module.rep[i] @ g)
            for i in range(module.algebra.dim)
        ) if module.algebra.dim else 0.0
        eig = np.linalg.eigvalsh(g)
        plus, minus = int((eig > 0).sum()), int((eig < 0).sum())
    else:
        eig = np.linalg.eigvalsh((F + F.conj().T) / 2)
        plus, minus = int((eig > 0).sum()), int((eig < 0).sum())

    max_violation = max(checks.values())
    report = {
        "checks": checks,
        "max_violation": float(max_violation),
        "eigenspace_dims": (plus, minus),
        "eigenspaces_nonzero": plus >= 1 and minus >= 1,
        "warning": (
            "finite-dimensional stand-in: both eigenspaces are only required to be "
            "nonzero, not infinite-dimensional"
        ),
        "schatten": schatten_report(module),
        "algebra": validate_algebra(module.algebra),
        "pass": bool(max_violation <= tol) and plus >= 1 and minus >= 1,
    }
    report["pass"] = report["pass"] and report["algebra"]["pass"]
    return report


def index_cocycle(module: FredholmModule, validated: bool = False) -> Cochain:
    """Dense degree-(m-1) index cocycle tensor over the unitalization."""
    if not validated:
        rep_report = validate_module(module)
        if not rep_report["pass"]:
            raise InputError(f"invalid Fredholm module: {rep_report['checks']}")
    at = unitalize(module.algebra)
    m = module.m
    _check_budget(at.dim, m - 1)
    comm = commutators_tilde(module)
    front = module.gamma_eff @ module.F / 2.0
    # Progressive contraction: stack[i0...ik] = front C_{i0} ... C_{ik};
    # the final factor is folded into the trace to avoid materializing the
    # full rank-m stack of matrices.
    stack = np.einsum("ab,ibc->iac", front, comm)
    for _ in range(m - 2):
        stack = np.einsum("...ab,jbc->...jac", stack, comm)
    if m == 1:
        values = np.trace(stack, axis1=-2, axis2=-1)
    else:
        values = np.einsum("...ab,jba->...j", stack, comm)
    return Cochain(at, values)


def index_cocycle_total(module: FredholmModule, validated: bool = False) -> TotalCochain:
    """The index cocycle placed in the top slot of a totalized cochain."""
    return total_from_top(index_cocycle(module, validated=validated))


def direct_sum(m1: FredholmModule, m2: FredholmModule) -> FredholmModule:
    if not (m1.algebra is m2.algebra or np.array_equal(m1.algebra.structure, m2.algebra.structure)):
        raise InputError("direct sum needs modules over the same algebra")
    if m1.m != m2.m:
        raise InputError(f"direct sum needs equal summability degrees, got {m1.m} and {m2.m}")
    n1, n2 = m1.n, m2.n
    rep = np.zeros((m1.algebra.dim, n1 + n2, n1 + n2), dtype=complex)
    rep[:, :n1, :n1] = m1.rep
    rep[:, n1:, n1:] = m2.rep
    F = np.zeros((n1 + n2, n1 + n2), dtype=complex)
    F[:n1, :n1] = m1.F
    F[n1:, n1:] = m2.F
    gamma = None
    if m1.graded:
        gamma = np.zeros((n1 + n2, n1 + n2), dtype=complex)
        gamma[:n1, :n1] = m1.gamma
        gamma[n1:, n1:] = m2.gamma
    return FredholmModule(m1.algebra, rep, F, m1.m, gamma)


def inverse(module: FredholmModule) -> FredholmModule:
    """(rep, H, -F), with the grading flipped in the graded case."""
    gamma = -module.gamma if module.graded else None
    return FredholmModule(module.algebra, module.rep, -module.F, module.m, gamma)


def involution_defect(F: np.ndarray, T: np.ndarray) -> float:
    """|| FT + TF + T^2 ||; zero exactly when (F + T)^2 = F^2."""
    return operator_norm(F @ T + T @ F + T @ T)


def perturb(module: FredholmModule, T: np.ndarray, tol: float = STRUCTURAL_TOL) -> FredholmModule:
    """Replace F by G = F + T; T must keep G a self-adjoint involution.

    In the graded case the grading is kept, so G must anticommute with it.
    Raises with the residual norms when G fails to be an involutive symmetry.
    """
    T = np.asarray(T, dtype=complex)
    if T.shape != module.F.shape:
        raise InputError("perturbation shape does not match F")
    G = module.F + T
    residuals = {
        "G_selfadjoint": operator_norm(G - G.conj().T),
        "G_involutive": operator_norm(G @ G - np.eye(module.n)),
        "FT+TF+T^2": involution_defect(module.F, T),
    }
    if module.graded:
        residuals["gamma_G_anticommute"] = operator_norm(module.gamma @ G + G @ module.gamma)
    bad = {k: v for k, v in residuals.items() if v > tol}
    if bad:
        raise InputError(f"G = F + T is not an involutive symmetry: residuals {bad}")
    return FredholmModule(module.algebra, module.rep, G, module.m, module.gamma)


def is_degenerate(module: FredholmModule, tol: float = STRUCTURAL_TOL) -> bool:
    """True when every generator commutator [F, rep(e_i)] vanishes."""
    comm = commutators_tilde(module)
    return float(np.abs(comm).max()) <= tol if comm.size else True


def unitary_conjugate(module: FredholmModule, u: np.ndarray, tol: float = STRUCTURAL_TOL) -> FredholmModule:
    u = np.asarray(u, dtype=complex)
    if u.shape != (module.n, module.n):
        raise InputError("conjugating unitary has the wrong shape")
    if operator_norm(u @ u.conj().T - np.eye(module.n)) > tol:
        raise InputError("conjugation requires a unitary matrix")
    rep = np.einsum("ab,ibc,cd->iad", u, module.rep, u.conj().T)
    F = u @ module.F @ u.conj().T
    gamma = u @ module.gamma @ u.conj().T if module.graded else None
    return FredholmModule(module.algebra, rep, F, module.m, gamma)


def relax_summability(module: FredholmModule) -> FredholmModule:
    """Record the module as (m+2)-summable; parity and grading are unchanged."""
    return FredholmModule(module.algebra, module.rep, module.F, module.m + 2, module.gamma)


def check_stable_perturbation_certificate(f1: FredholmModule, f2: FredholmModule,
                                          u: np.ndarray, T: np.ndarray,
                                          g1=None, g2=None, h=None, d1=None, d2=None,
                                          tol: float = STRUCTURAL_TOL) -> dict:
    """Verify a stable-perturbation certificate between two modules.

    The claim being certified is

        f1 (+) g1 (+) g1^-1 (+) d1 (+) h   ~   f2 (+) g2 (+) g2^-1 (+) d2 (+) h

    with d1, d2 degenerate, the relation being one unitary conjugation by u
    followed by the perturbation T.  This is a checker, not a decision
    procedure: the caller supplies all padding modules and the connecting
    data, and every clause is verified numerically.  Side reports include
    the padding cancellation of index cocycles (inverse pairs cancel,
    degenerates vanish), so a passing certificate pins the class equality
    of the characters of f1 and f2 down to the perturbation step, which is
    certified separately by the coboundary witness.
    """
    def assemble(core, g, d):
        total = core
        if g is not None:
            total = direct_sum(direct_sum(total, g), inverse(g))
        if d is not None:
            total = direct_sum(total, d)
        if h is not None:
            total = direct_sum(total, h)
        return total

    left = assemble(f1, g1, d1)
    right = assemble(f2, g2, d2)
    report = {"left_dim": left.n, "right_dim": right.n}
    if left.n != right.n:
        report.update({"pass": False, "reason": "total dimensions differ"})
        return report
    for name, d in (("d1", d1), ("d2", d2)):
        if d is not None:
            report[f"{name}_degenerate"] = is_degenerate(d, tol)
    conjugated = unitary_conjugate(left, u, tol)
    residuals = {
        "rep": float(np.abs(conjugated.rep - right.rep).max()),
        "symmetry": operator_norm(conjugated.F + np.asarray(T, dtype=complex) - right.F),
        "perturbation_involution": involution_defect(conjugated.F, np.asarray(T, dtype=complex)),
    }
    if left.graded:
        residuals["grading"] = operator_norm(conjugated.gamma - right.gamma)
    report["residuals"] = residuals
    report["perturbation_m_norm"] = schatten_norm(np.asarray(T, dtype=complex), left.m)
    padding_cancels = float(np.abs(
        index_cocycle(left).values - index_cocycle(f1).values
        - (index_cocycle(h).values if h is not None else 0.0)
    ).max())
    report["padding_cancellation"] = padding_cancels
    report["pass"] = bool(
        max(residuals.values()) <= tol
        and padding_cancels <= 10 * tol
        and all(report.get(f"{name}_degenerate", True) for name in ("d1", "d2"))
    )
    return report


@dataclass(frozen=True)
class EmbeddedModule:
    """A module rewritten in the split basis H+ (+) H- of the universal picture."""

    basis: np.ndarray            # columns: the chosen orthonormal eigenbasis
    rep: np.ndarray              # generators in the split basis
    F_model: np.ndarray          # diag(1, -1) blocks (F-split) or the swap (gamma-split)
    gamma_model: Optional[np.ndarray]
    plus_dim: int
    minus_dim: int
    warning: str = (
        "identification with the universal picture is fixed only up to diagonal "
        "unitary conjugation; downstream norms and cocycles are conjugation-invariant"
    )


def universal_embed(module: FredholmModule, tol: float = STRUCTURAL_TOL):
    """Rewrite the module in the eigenbasis splitting of the universal picture.

    Ungraded case (m even): split by the eigenspaces of F via P = (F + 1)/2;
    in that basis F itself becomes diag(1, -1) blocks.  Graded case (m odd):
    split by the eigenspaces of gamma, with the minus half identified through
    F so that F becomes the off-diagonal swap.  Returns the embedded module
    description and the norm report ||x|| = ||x|| + ||[F_model, x]||_m per
    generator, the norm of the universal Banach algebra.
    """
    n = module.n
    if module.graded:
        w, v = np.linalg.eigh(module.gamma)
    else:
        w, v = np.linalg.eigh((module.F + module.F.conj().T) / 2)
    plus = [i for i in range(n) if w[i] > 0]
    minus = [i for i in range(n) if w[i] <= 0]
    p, q = len(plus), len(minus)
    if p == 0 or q == 0:
        raise InputError(
            f"universal embedding needs both eigenspaces nonzero, got dims ({p}, {q})"
        )

    if module.graded:
        if p != q:
            raise InputError("graded splitting must be balanced: F maps H+ onto H-")
        basis_plus = v[:, plus]
        basis_minus = module.F @ basis_plus     # orthonormal image of H+ under F
        basis = np.hstack([basis_plus, basis_minus])
        F_model = np.zeros((n, n), dtype=complex)
        F_model[:p, p:] = np.eye(p)
        F_model[p:, :p] = np.eye(p)
        gamma_model = np.diag(np.concatenate([np.ones(p), -np.ones(q)])).astype(complex)
    else:
        # eigenvalue +1 block first, original column order inside each block
        basis = np.hstack([v[:, plus], v[:, minus]])
        F_model = np.diag(np.concatenate([np.ones(p), -np.ones(q)])).astype(complex)
        gamma_model = None

    rep = np.einsum("ab,ibc,cd->iad", basis.conj().T, module.rep, basis)
    F_check = basis.conj().T @ module.F @ basis
    if operator_norm(F_check - F_model) > 1e3 * tol * max(1.0, operator_norm(module.F)):
        raise InputError("eigenbasis split failed to bring F to the model form")

    embedded = EmbeddedModule(basis, rep, F_model, gamma_model, p, q)
    comm, op, both = [], [], []
    for i in range(module.algebra.dim):
        c = schatten_norm(F_model @ rep[i] - rep[i] @ F_model, module.m)
        o = operator_norm(rep[i])
        comm.append(c)
        op.append(o)
        both.append(o + c)
    return embedded, SchattenReport(module.m, tuple(comm), tuple(op), tuple(both))


def embedded_as_module(module: FredholmModule, embedded: EmbeddedModule) -> FredholmModule:
    """The embedded data as a Fredholm module (unitarily equivalent to the input)."""
    return FredholmModule(module.algebra, embedded.rep, embedded.F_model, module.m,
                          embedded.gamma_model)
