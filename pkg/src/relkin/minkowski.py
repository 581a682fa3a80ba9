"""Linear algebra on Minkowski space with signature (-,+,+,+) and c = 1.

Vectors are numpy arrays of shape (4,) ordered (t, x, y, z); linear maps
are 4x4 arrays acting on components.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from .errors import DomainError

METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])

E_T = np.array([1.0, 0.0, 0.0, 0.0])
E_X = np.array([0.0, 1.0, 0.0, 0.0])
E_Y = np.array([0.0, 0.0, 1.0, 0.0])
E_Z = np.array([0.0, 0.0, 0.0, 1.0])

IDENTITY = np.eye(4)

UNIT_TOL = 1e-10
ANTISYM_TOL = 1e-10
ISOMETRY_TOL = 1e-8


def vec4(t: float, x: float, y: float, z: float) -> np.ndarray:
    return np.array([t, x, y, z], dtype=float)


def dot(v: np.ndarray, w: np.ndarray) -> float:
    """Minkowski product: -v_t w_t + v_x w_x + v_y w_y + v_z w_z."""
    return float(-v[0] * w[0] + v[1] * w[1] + v[2] * w[2] + v[3] * w[3])


def spatial_norm(v: np.ndarray) -> float:
    """Length of a spacelike vector; fails on timelike input."""
    q = dot(v, v)
    if q < 0:
        raise ValueError("vector is timelike, spatial_norm undefined")
    return float(np.sqrt(q))


def adjoint(a: np.ndarray) -> np.ndarray:
    """Metric adjoint a* with dot(a x, y) = dot(x, a* y)."""
    return METRIC @ a.T @ METRIC


def antisymmetry_defect(a: np.ndarray) -> float:
    """Frobenius norm of a + a*; zero exactly for g-antisymmetric maps."""
    return float(np.linalg.norm(a + adjoint(a)))


def is_antisymmetric(a: np.ndarray, tol: float = ANTISYM_TOL) -> bool:
    return antisymmetry_defect(a) <= tol * max(1.0, float(np.linalg.norm(a)))


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product map x -> a * dot(b, x)."""
    return np.outer(a, b) @ METRIC


def wedge(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Antisymmetric map z -> x dot(y,z) - y dot(x,z)."""
    return tensor(x, y) - tensor(y, x)


def is_four_velocity(u: np.ndarray, tol: float = UNIT_TOL) -> bool:
    return abs(dot(u, u) + 1.0) <= tol and u[0] > 0


def check_four_velocity(u: np.ndarray, name: str = "u") -> None:
    if not is_four_velocity(u):
        raise ValueError(
            f"{name} is not a future-pointing unit timelike vector "
            f"(dot = {dot(u, u):.6g}, t component = {u[0]:.6g})"
        )


def projector(u: np.ndarray) -> np.ndarray:
    """Projection onto the rest space E_u of a four-velocity u."""
    check_four_velocity(u)
    return IDENTITY + tensor(u, u)


def boost(u: np.ndarray, u2: np.ndarray) -> np.ndarray:
    """Lorentz boost mapping the four-velocity u to u2.

    Acts as the identity on the orthogonal complement of the u-u2 plane.
    Closed form fixed by the contract boost(u, u2) @ u == u2 together with
    isometry; reduces to the identity when u == u2.
    """
    check_four_velocity(u, "u")
    check_four_velocity(u2, "u2")
    c = dot(u, u2)
    # c = -gamma of the relative velocity, always <= -1 for future timelike units
    if c > -1.0 + 1e-15:
        return IDENTITY.copy()
    s = u + u2
    return IDENTITY - 2.0 * tensor(u2, u) + tensor(s, s) / (1.0 - c)


def exp_generator(a: np.ndarray, s: float = 1.0) -> np.ndarray:
    """Exponential exp(s*a) of a g-antisymmetric generator.

    Pure spatial rotation generators (those with b^3 = -w^2 b for b = s*a)
    use the closed Rodrigues form; anything else falls back to
    scaling-and-squaring.
    """
    if not is_antisymmetric(a):
        raise ValueError("generator is not g-antisymmetric")
    b = s * a
    nb = float(np.linalg.norm(b))
    if nb < 1e-300:
        return IDENTITY.copy()
    b2 = b @ b
    tr2 = float(np.trace(b2))
    if tr2 < 0.0:
        w2 = -tr2 / 2.0
        w = np.sqrt(w2)
        if np.linalg.norm(b2 @ b + w2 * b) <= 1e-12 * max(1.0, nb**3):
            return IDENTITY + (np.sin(w) / w) * b + ((1.0 - np.cos(w)) / w2) * b2
    return expm(b)


def rotation_rate(w: np.ndarray) -> float:
    """Scalar rate of a rotation generator, invariant under conjugation
    by isometries: sqrt(-trace(w^2)/2)."""
    return float(np.sqrt(max(-np.trace(w @ w) / 2.0, 0.0)))


def orthonormal_triad(u: np.ndarray) -> list[np.ndarray]:
    """Right-handed orthonormal basis of the rest space E_u."""
    p = projector(u)
    triad: list[np.ndarray] = []
    for col in range(4):
        w = p[:, col].copy()
        for e in triad:
            w -= dot(e, w) * e
        q = dot(w, w)
        if q > 1e-12:
            triad.append(w / np.sqrt(q))
        if len(triad) == 3:
            break
    if len(triad) != 3:
        raise ValueError("failed to build a basis of the rest space")
    if np.linalg.det(np.column_stack([u] + triad)) < 0:
        triad[1], triad[2] = triad[2], triad[1]
    return triad


def restrict_to_rest_space(
    r: np.ndarray, u: np.ndarray, triad: list[np.ndarray] | None = None
) -> np.ndarray:
    """3x3 matrix of r acting on E_u in an orthonormal triad."""
    if triad is None:
        triad = orthonormal_triad(u)
    m = np.empty((3, 3))
    for j, ej in enumerate(triad):
        rej = r @ ej
        for i, ei in enumerate(triad):
            m[i, j] = dot(ei, rej)
    return m


AXIS_FLAG_TOL = 1e-9


def rotation_angle(
    r: np.ndarray, u: np.ndarray, tol: float = ISOMETRY_TOL
) -> tuple[float, np.ndarray | None]:
    """Principal angle in [0, pi] and axis of a rotation of the rest space E_u.

    The axis is None when the angle is 0 or pi (axis undefined or ambiguous).
    Rejects maps that are not isometries of E_u or that reverse orientation.
    """
    triad = orthonormal_triad(u)
    m = restrict_to_rest_space(r, u, triad)
    defect = np.linalg.norm(m.T @ m - np.eye(3))
    if defect > tol:
        raise ValueError(f"map is not an isometry of E_u (defect {defect:.3g})")
    if np.linalg.det(m) < 0:
        raise ValueError("map reverses orientation of E_u (det -1)")
    cos_t = (np.trace(m) - 1.0) / 2.0
    angle = float(np.arccos(np.clip(cos_t, -1.0, 1.0)))
    if angle < AXIS_FLAG_TOL or np.pi - angle < AXIS_FLAG_TOL:
        return angle, None
    w = np.array([m[2, 1] - m[1, 2], m[0, 2] - m[2, 0], m[1, 0] - m[0, 1]])
    w = w / (2.0 * np.sin(angle))
    axis = w[0] * triad[0] + w[1] * triad[1] + w[2] * triad[2]
    axis = axis / spatial_norm(axis)
    return angle, axis


def isometry_defect(e: np.ndarray) -> float:
    """Relative failure of dot(ex, ey) = dot(x, y)."""
    g = e.T @ METRIC @ e - METRIC
    return float(np.linalg.norm(g)) / max(1.0, float(np.linalg.norm(e)) ** 2)


def velocity_of(u: np.ndarray) -> float:
    """Speed of a four-velocity relative to the (t,x,y,z) chart."""
    check_four_velocity(u)
    return float(np.sqrt(u[1] ** 2 + u[2] ** 2 + u[3] ** 2) / u[0])


def gamma_of_speed(v: float) -> float:
    if not 0.0 <= v < 1.0:
        raise DomainError(f"speed {v} is not in [0, 1)")
    return 1.0 / np.sqrt(1.0 - v * v)
