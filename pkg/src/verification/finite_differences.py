"""Central finite differences for real Hessians and complex Levi forms."""
from typing import Callable, Sequence

import numpy as np


def finite_difference_hessian(f: Callable[[np.ndarray], float], x0: Sequence[float], steps) -> np.ndarray:
    """Second order central difference Hessian of a scalar f at x0.

    `steps` is a scalar or one step per coordinate.
    """
    x0 = np.asarray(x0, dtype=float)
    dim = len(x0)
    h = np.broadcast_to(np.asarray(steps, dtype=float), (dim,))
    E = np.diag(h)
    f0 = f(x0)
    hess = np.zeros((dim, dim))
    for ii in range(dim):
        for jj in range(ii, dim):
            if ii == jj:
                pij = f(x0 + E[ii]) - 2 * f0 + f(x0 - E[ii])
                hess[ii, jj] = pij / h[ii] / h[ii]
            else:
                pij = f(x0 + E[ii] + E[jj])
                pij -= f(x0 + E[ii] - E[jj])
                pij -= f(x0 - E[ii] + E[jj])
                pij += f(x0 - E[ii] - E[jj])
                hess[ii, jj] = pij / (4 * h[ii] * h[jj])
                hess[jj, ii] = hess[ii, jj]
    return hess


def levi_from_hessian(hess: np.ndarray) -> np.ndarray:
    """Complex Hessian [[u_zz̄, u_zw̄], [u_wz̄, u_ww̄]] from the real Hessian in (x, y, xi, eta)."""
    u_zz = 0.25 * (hess[0, 0] + hess[1, 1])
    u_ww = 0.25 * (hess[2, 2] + hess[3, 3])
    u_zw = 0.25 * complex(hess[0, 2] + hess[1, 3], hess[0, 3] - hess[1, 2])
    return np.array([[u_zz, u_zw], [np.conj(u_zw), u_ww]], dtype=complex)


def relative_steps(z: complex, w: complex, h: float) -> np.ndarray:
    """h * max(|coordinate|, 10h) for the two real coordinates of each variable."""
    hz = h * max(abs(z), 10.0 * h)
    hw = h * max(abs(w), 10.0 * h)
    return np.array([hz, hz, hw, hw])


def levi_form(u: Callable[[complex, complex], float], z: complex, w: complex, steps) -> np.ndarray:
    def real_u(x):
        return u(complex(x[0], x[1]), complex(x[2], x[3]))

    hess = finite_difference_hessian(real_u, [z.real, z.imag, w.real, w.imag], steps)
    return levi_from_hessian(hess)


def levi_eigenvalues(levi: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of the Hermitian Levi form."""
    return np.linalg.eigvalsh(levi)


def richardson_levi_form(u: Callable[[complex, complex], float], z: complex, w: complex, steps) -> np.ndarray:
    """Levi form at steps and steps/2 combined so the h^2 error term cancels."""
    steps = np.asarray(steps, dtype=float)
    coarse = levi_form(u, z, w, steps)
    fine = levi_form(u, z, w, steps / 2.0)
    return (4.0 * fine - coarse) / 3.0


def min_eigenvalue(levi: np.ndarray) -> float:
    return float(levi_eigenvalues(levi)[0])


def radial_operator(v: Callable[[np.ndarray], np.ndarray], r: np.ndarray, steps: np.ndarray) -> np.ndarray:
    """v'' + v'/r by central differences, vectorized over radii."""
    plus, mid, minus = v(r + steps), v(r), v(r - steps)
    second = (plus - 2.0 * mid + minus) / steps ** 2
    first = (plus - minus) / (2.0 * steps)
    return second + first / r
