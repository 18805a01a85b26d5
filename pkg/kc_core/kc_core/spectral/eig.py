# SPDX-License-Identifier: BSD-3-Clause
# Copyright (c) 2026 kernel_compress developers
import logging
from typing import Optional, Tuple

import torch

from kc_core.errors import ConvergenceError
from kc_core.kernels import as_matrix

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-8
START_SEED = 0


def _start_vector(n: int, generator: torch.Generator) -> torch.Tensor:
    # all-ones blended with a fixed-seed perturbation; symmetric point sets make the plain
    # all-ones vector orthogonal to every antisymmetric eigenvector
    v = torch.ones(n, dtype=torch.float64) + 0.5 * torch.randn(n, generator=generator, dtype=torch.float64)
    return v / v.norm()


def power_iteration(A: torch.Tensor, v0: torch.Tensor, tol: float = 1e-10, max_iter: int = 100000,
                    residual_tol: Optional[float] = RESIDUAL_TOL, generator: Optional[torch.Generator] = None
                    ) -> Tuple[float, torch.Tensor, int]:
    """ Power iteration for the eigenpair of largest magnitude of a symmetric matrix.

    Stops when the relative change of the Rayleigh quotient is below tol and, if residual_tol is set,
    the relative residual ||Av - rho v|| / |rho| is below residual_tol. A start vector that lands in the
    numerical null space is replaced by a random one drawn from `generator`.

    Returns:
        Rayleigh quotient, unit eigenvector estimate, number of iterations
    """
    scale = float(A.abs().max()) if A.numel() else 0.
    v = v0 / v0.norm()
    if scale == 0.:
        return 0., v, 0
    Av = A @ v
    rho = float(v @ Av)
    for it in range(1, max_iter + 1):
        norm = float(Av.norm())
        if norm <= 1e-14 * scale:
            logger.debug("power iteration stagnated at iteration %d, reseeding", it)
            v = torch.randn(A.shape[0], generator=generator, dtype=A.dtype)
            v = v / v.norm()
            Av = A @ v
            rho = float(v @ Av)
            continue
        v = Av / norm
        Av = A @ v
        rho_new = float(v @ Av)
        converged = abs(rho_new - rho) <= tol * abs(rho_new)
        if converged and residual_tol is not None:
            converged = float((Av - rho_new * v).norm()) <= residual_tol * abs(rho_new)
        rho = rho_new
        if converged:
            return rho, v, it
    raise ConvergenceError(f"power iteration did not converge within {max_iter} iterations", rho)


def extreme_eigs(gram, tol: float = 1e-10, max_iter: int = 100000) -> Tuple[float, float]:
    """ Largest and smallest eigenvalue of a symmetric PSD matrix by two-phase power iteration.

    Phase one estimates lambda_1 from K. Phase two runs on B = K - s I with s the phase-one estimate; the
    dominant eigenvalue of B is lambda_d - s, so lambda_d = s + mu independently of the error in s. A
    positive mu means s was below the midpoint of the spectrum; then s moves up by mu and phase two reruns.
    """
    K = as_matrix(gram)
    n = K.shape[0]
    if n == 1:
        value = float(K[0, 0])
        return value, value
    generator = torch.Generator().manual_seed(START_SEED)
    v0 = _start_vector(n, generator)
    lam1, _, it1 = power_iteration(K, v0, tol, max_iter, residual_tol=None, generator=generator)
    shift = lam1
    eye = torch.eye(n, dtype=K.dtype)
    for _ in range(4):
        B = K - shift * eye
        if float(B.abs().max()) <= 1e-14 * max(abs(shift), 1e-300):
            return shift, shift
        mu, _, it2 = power_iteration(B, v0, tol, max_iter, generator=generator)
        logger.debug("extreme_eigs: shift %.6g, mu %.6g after %d + %d iterations", shift, mu, it1, it2)
        if mu <= 0.:
            return shift, shift + mu
        shift = shift + mu
    raise ConvergenceError("shifted power iteration kept finding a larger eigenvalue", shift)


def smallest_eig(gram, tol: float = 1e-10, max_iter: int = 100000) -> float:
    """ Smallest eigenvalue lambda_d of a symmetric PSD Gram matrix (two-phase power iteration). """
    return extreme_eigs(gram, tol, max_iter)[1]
