#!/usr/bin/env python3

""" Basis pursuit denoising at the fusion center: the least l1 nonnegative
level vector that explains the measurements up to the noise. """

# std
from dataclasses import dataclass, asdict
import math
from typing import Optional, Union

# 3rd party
import cvxpy as cp
import numpy as np
import scipy.optimize

# ours
from widesense.errors import NumericalError
from widesense.fusion.matrix import MeasurementMatrix, MeasurementVector
from widesense.spectrum.environment import NoiseModel
from widesense.util.log import get_logger

log = get_logger("Recovery")


@dataclass(frozen=True)
class SolverOptions:
    #: Iteration limit handed to the conic solver
    max_iters: int = 20000
    #: Accepted mismatch between the clipped and the solver's l1 objective
    kkt_tol: float = 1e-7
    #: Relative slack on the residual bound. Residuals below ``feas_tol``
    #: times the norm of the measurements count as zero.
    feas_tol: float = 1e-6
    #: Name of the cvxpy solver
    solver: str = "CLARABEL"
    #: Gap and feasibility tolerance of the solver itself
    solver_tol: float = 1e-9
    #: Solve for ``x_0 ... x_L0`` only, using ``x_l = x_-l``
    fold_symmetry: bool = False
    #: Residual bound; ``None`` means :func:`default_epsilon`
    epsilon: Optional[float] = None

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be positive.")
        for name in ["kkt_tol", "feas_tol", "solver_tol"]:
            if not getattr(self, name) > 0:
                raise ValueError("{} must be positive.".format(name))
        if self.epsilon is not None and not self.epsilon >= 0:
            raise ValueError(
                "epsilon must be non-negative, got {}.".format(self.epsilon)
            )

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class SolverReport:
    iterations: int
    residual_norm: float
    l1_norm: float
    converged: bool
    status: str = "optimal"
    #: False if the residual bound had to be relaxed to the smallest
    #: achievable residual
    feasible: bool = True
    #: Residual bound that was actually imposed
    epsilon: float = 0.0


@dataclass(frozen=True, eq=False)
class RecoveredLevels:
    x_hat: np.ndarray
    report: SolverReport

    def __post_init__(self):
        x_hat = np.array(self.x_hat, dtype=float)
        if not np.all(np.isfinite(x_hat)):
            raise NumericalError("Recovered levels are not finite.")
        x_hat.flags.writeable = False
        object.__setattr__(self, "x_hat", x_hat)

    @property
    def L(self) -> int:
        return self.x_hat.size

    def residual(self, A: MeasurementMatrix, y) -> float:
        """``||A x_hat - y||_2``"""
        residual = A.entries @ self.x_hat - measurement_values(y)
        return float(np.linalg.norm(residual))


def default_epsilon(noise: NoiseModel, K: int) -> float:
    """Expected norm of the noise on the realified system,
    ``sigma_w sqrt(2 K)``."""
    return noise.sigma_w * math.sqrt(2 * K)


# =============================================================================
# Symmetric folding
# =============================================================================


def folding_matrix(L: int) -> np.ndarray:
    """The ``L x (L0 + 1)`` matrix ``E`` with ``x = E z`` for
    ``z = (x_0, x_1, ..., x_L0)`` and symmetric ``x``."""
    half = L // 2
    E = np.zeros((L, half + 1))
    for l in range(half + 1):
        E[half - l, l] = 1
        E[half + l, l] = 1
    return E


def fold_levels(matrix: np.ndarray) -> np.ndarray:
    """Matrix acting on folded levels ``z``: ``M E``."""
    return matrix @ folding_matrix(matrix.shape[1])


def unfold_levels(z, L: int) -> np.ndarray:
    return folding_matrix(L) @ np.asarray(z, dtype=float)


# =============================================================================
# Solver
# =============================================================================


def measurement_values(y) -> np.ndarray:
    if isinstance(y, MeasurementVector):
        return y.values
    return np.asarray(y, dtype=float)


def _solver_kwargs(opts: SolverOptions):
    name = opts.solver.upper()
    if name == "CLARABEL":
        return dict(
            max_iter=opts.max_iters,
            tol_gap_abs=opts.solver_tol,
            tol_gap_rel=opts.solver_tol,
            tol_feas=opts.solver_tol,
        )
    if name == "ECOS":
        return dict(
            max_iters=opts.max_iters,
            abstol=opts.solver_tol,
            reltol=opts.solver_tol,
            feastol=opts.solver_tol,
        )
    if name == "SCS":
        return dict(
            max_iters=opts.max_iters,
            eps_abs=opts.solver_tol,
            eps_rel=opts.solver_tol,
        )
    return {}


def _reduce(M: np.ndarray, b: np.ndarray):
    """Replace ``||M x - b||`` by ``||R x - r||`` with a full row rank ``R``;
    the two differ by the constant part ``perp`` of ``b`` outside the range
    of ``M``, ``||M x - b||^2 = ||R x - r||^2 + perp^2``."""
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        rank = 0
    else:
        rank = int(np.sum(s > s[0] * max(M.shape) * np.finfo(float).eps))
    R = s[:rank, None] * Vt[:rank]
    r = U[:, :rank].T @ b
    perp = float(np.linalg.norm(b - U[:, :rank] @ r))
    return R, r, perp


def bp_recover(
    A: MeasurementMatrix,
    y: Union[MeasurementVector, np.ndarray],
    noise: NoiseModel = NoiseModel(),
    opts: SolverOptions = SolverOptions(),
    epsilon: Optional[float] = None,
) -> RecoveredLevels:
    """Noisy basis pursuit with nonnegative unknowns:

    .. math::

        \\min_{x \\geq 0} \\|x\\|_1 \\quad \\text{s.t.} \\quad
        \\|A x - y\\|_2 \\leq \\epsilon

    The complex system is solved in its realified form
    ``[Re A; Im A] x = [y; 0]``. If no ``x >= 0`` meets the bound, the bound
    is relaxed to the smallest achievable residual and the result is flagged
    as not feasible.

    Args:
        A: Measurement matrix
        y: Measurements
        noise: Noise model, used for the default residual bound
        opts: :class:`SolverOptions`
        epsilon: Residual bound, overrides ``opts.epsilon`` and the default
            ``sigma_w sqrt(2 K)``

    Returns:
        :class:`RecoveredLevels`
    """
    y = measurement_values(y)
    K, L = A.shape
    if y.size != K:
        raise ValueError(
            "{} measurements for a matrix with {} rows.".format(y.size, K)
        )
    if epsilon is None:
        epsilon = opts.epsilon
    if epsilon is None:
        epsilon = default_epsilon(noise, K)
    if not epsilon >= 0:
        raise ValueError(
            "epsilon must be non-negative, got {}.".format(epsilon)
        )

    M = A.realified()
    b = np.concatenate([y, np.zeros(K)])
    norm_b = float(np.linalg.norm(b))
    floor = opts.feas_tol * norm_b

    if norm_b <= epsilon:
        return _finish(
            A, y, np.zeros(L), "trivial", 0, epsilon, True, opts, floor
        )

    if opts.fold_symmetry:
        M = fold_levels(M)
        weights = folding_matrix(L).sum(axis=0)
    else:
        weights = np.ones(L)

    r_min = scipy.optimize.nnls(M, b)[1]
    R, r, perp = _reduce(M, b)
    if R.shape[0] == 0:
        # A = 0, nothing but x = 0 is worth paying for
        return _finish(
            A, y, np.zeros(L), "optimal", 0, norm_b, False, opts, floor
        )

    feasible = True
    if epsilon == 0 and r_min <= floor:
        epsilon_used = 0.0
    elif r_min <= epsilon:
        epsilon_used = epsilon
    else:
        epsilon_used = r_min + floor
        feasible = r_min <= floor
        if not feasible:
            log.warning(
                "No nonnegative solution within epsilon = {:.4g}, relaxing to "
                "the smallest residual {:.4g}.".format(epsilon, r_min)
            )

    radius_sq = epsilon_used ** 2 - perp ** 2
    radius = math.sqrt(radius_sq) if radius_sq > 0 else None
    solution, status, iterations, objective_ok = _solve(
        R, r, weights, radius, opts
    )
    if radius is None and status != "optimal":
        # Exact fit failed on rounding; allow the smallest residual instead
        epsilon_used = r_min + floor
        solution, status, more, objective_ok = _solve(
            R, r, weights, math.sqrt(epsilon_used ** 2 - perp ** 2), opts
        )
        iterations += more
    if opts.fold_symmetry:
        solution = unfold_levels(solution, L)
    return _finish(
        A,
        y,
        solution,
        status,
        iterations,
        epsilon_used,
        feasible,
        opts,
        floor,
        objective_ok=objective_ok,
    )


def residual_bound(epsilon: float, floor: float, opts: SolverOptions) -> float:
    """Largest residual a converged recovery may leave: ``epsilon (1 +
    feas_tol)``, or the rounding level ``floor`` if that is larger (exact
    fits with ``epsilon = 0``)."""
    return max(epsilon * (1 + opts.feas_tol), floor)


def _solve(R, r, weights, radius: Optional[float], opts: SolverOptions):
    """``min weights . x`` over ``x >= 0`` with ``||R x - r|| <= radius``,
    or ``R x = r`` if ``radius`` is None."""
    x = cp.Variable(R.shape[1], nonneg=True)
    if radius is None:
        constraints = [R @ x == r]
    else:
        constraints = [cp.norm(R @ x - r, 2) <= radius]
    problem = cp.Problem(cp.Minimize(weights @ x), constraints)
    iterations = 0
    try:
        problem.solve(solver=opts.solver, **_solver_kwargs(opts))
        status = problem.status
        iterations = int(problem.solver_stats.num_iters or 0)
    except cp.error.SolverError as e:
        log.warning("Solver {} failed: {}".format(opts.solver, e))
        status = "solver_error"

    if x.value is None:
        return np.zeros(R.shape[1]), status, iterations, False
    solution = np.clip(x.value, 0, None)
    if not np.all(np.isfinite(solution)):
        raise NumericalError(
            "Solver {} returned non-finite levels.".format(opts.solver)
        )
    objective_ok = abs(float(weights @ solution) - problem.value) <= (
        opts.kkt_tol * max(1.0, abs(problem.value))
    )
    return solution, status, iterations, bool(objective_ok)


def _finish(
    A,
    y,
    x_hat,
    status,
    iterations,
    epsilon,
    feasible,
    opts: SolverOptions,
    floor,
    objective_ok=True,
) -> RecoveredLevels:
    residual = float(np.linalg.norm(A.entries @ x_hat - y))
    converged = (
        status in ("optimal", "trivial")
        and objective_ok
        and residual <= residual_bound(epsilon, floor, opts)
    )
    if not converged:
        log.warning(
            "Recovery did not converge (status {}, residual {:.4g}, "
            "epsilon {:.4g}).".format(status, residual, epsilon)
        )
    report = SolverReport(
        iterations=iterations,
        residual_norm=residual,
        l1_norm=float(np.sum(x_hat)),
        converged=bool(converged),
        status=status,
        feasible=feasible,
        epsilon=float(epsilon),
    )
    return RecoveredLevels(x_hat, report)
