"""Deterministic, dependency-free SVG snapshots of shadows, sections and regions."""

from __future__ import annotations

import math

import numpy as np

from ..errors import RenderError
from ..kernel import Polytope, convex_hull_2d, cross_section_z0, enclosing_disc, fits_in_rect
from ..motion import Circle, ConvexPolygon, Gate, MotionPath, Rect, WindowSpec
from ..sliding import SlidingWitness, admissible_region, slide_feasible

PANEL = 240.0
PAD = 12.0
OK_FILL = "#8fc98f"
BAD_FILL = "#e06666"


def _num(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _points(pts) -> str:
    return " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)


class _Panel:
    """Maps a world box onto a square panel, y pointing up."""

    def __init__(self, lo, hi, ox: float = 0.0, oy: float = 0.0):
        lo, hi = np.asarray(lo, float), np.asarray(hi, float)
        span = max(float((hi - lo).max()), 1e-9)
        self.scale = (PANEL - 2 * PAD) / span
        self.lo = lo - 0.5 * (span - (hi - lo))
        self.ox, self.oy = ox, oy

    def __call__(self, pts) -> np.ndarray:
        p = (np.asarray(pts, float).reshape(-1, 2) - self.lo) * self.scale
        return np.stack([self.ox + PAD + p[:, 0], self.oy + PANEL - PAD - p[:, 1]], axis=1)


def _polygon(pts, fill: str, stroke: str = "#222", opacity: float = 1.0) -> str:
    if len(pts) == 1:
        (x, y), = pts
        return f'<circle cx="{_num(x)}" cy="{_num(y)}" r="2" fill="{stroke}"/>'
    if len(pts) == 2:
        return f'<polyline points="{_points(pts)}" fill="none" stroke="{stroke}" stroke-width="2"/>'
    return (
        f'<polygon points="{_points(pts)}" fill="{fill}" fill-opacity="{_num(opacity)}" '
        f'stroke="{stroke}" stroke-width="1"/>'
    )


def _document(width: float, height: float, body: list[str], title: str) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">'
    )
    return "\n".join([head, f"<title>{title}</title>", '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>", ""])


def _window_outline(W: WindowSpec, lo, hi) -> np.ndarray:
    if isinstance(W, Gate):
        # clip the unbounded slab to the drawing box
        return np.array([[0.0, lo[1]], [W.a, lo[1]], [W.a, hi[1]], [0.0, hi[1]]])
    return W.outline()


def _window_box(W: WindowSpec, extra=None) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(W, Gate):
        pts = np.array([[0.0, -0.5 * W.a], [W.a, 0.5 * W.a]])
    else:
        pts = W.outline()
    if extra is not None and len(extra):
        pts = np.vstack([pts, extra])
    return pts.min(axis=0), pts.max(axis=0)


def _centre_in(W: WindowSpec, pts: np.ndarray) -> np.ndarray:
    """Translate a planar point set to the natural centre of W."""
    if isinstance(W, Rect):
        target = np.array([0.5 * W.a, 0.5 * W.b])
        return pts + target - 0.5 * (pts.min(axis=0) + pts.max(axis=0))
    if isinstance(W, Gate):
        return pts + np.array([0.5 * W.a - 0.5 * (pts[:, 0].min() + pts[:, 0].max()), -0.5 * (pts[:, 1].min() + pts[:, 1].max())])
    if isinstance(W, Circle):
        return pts + np.asarray(W.center) - np.asarray(enclosing_disc(pts).center)
    return pts + W.vertices.mean(axis=0) - pts.mean(axis=0)


def render_shadow(K: Polytope, W: WindowSpec, tol: float = 1e-9) -> str:
    """Vertical shadow of K placed over W: turned to fit when W is a rectangle."""
    P = convex_hull_2d(K.vertices[:, :2]).vertices
    theta = fits_in_rect(convex_hull_2d(P), W.a, W.b, tol) if isinstance(W, Rect) else None
    if theta is not None:
        c, s = math.cos(theta), math.sin(theta)
        P = P @ np.array([[c, s], [-s, c]])
    P = _centre_in(W, P)
    fits = W.depth(P) <= tol
    lo, hi = _window_box(W, P)
    view = _Panel(lo, hi)
    body = [
        _polygon(view(_window_outline(W, lo, hi)), "none", "#1f4e9c"),
        _polygon(view(P), OK_FILL if fits else BAD_FILL, opacity=0.8),
    ]
    return _document(PANEL, PANEL, body, f"shadow {'fits' if fits else 'does not fit'}")


def section_frames(K: Polytope, path: MotionPath, frames: int) -> list[tuple[int, float, np.ndarray]]:
    """``frames`` non-empty window-plane sections spread evenly along the path."""
    if frames < 1:
        raise RenderError("need at least one frame")
    n = len(path)
    found = []
    m = 64 * frames
    for i in range(m):
        u = (i + 0.5) / m * n
        k = min(int(u), n - 1)
        s = u - k
        sec = cross_section_z0(K, path.at(k, s)).vertices
        if len(sec):
            found.append((k, s, sec))
    if not found:
        raise RenderError("the path never meets the window plane")
    if len(found) < frames:
        raise RenderError(f"only {len(found)} non-empty sections for {frames} frames")
    pick = np.linspace(0, len(found) - 1, frames).round().astype(int)
    return [found[i] for i in pick]


def render_sections(K: Polytope, path: MotionPath, W: WindowSpec, frames: int = 8, tol: float = 1e-9) -> str:
    """One panel per frame: the window outline and the section of K, red where it sticks out."""
    chosen = section_frames(K, path, frames)
    allpts = np.vstack([sec for _, _, sec in chosen])
    lo, hi = _window_box(W, allpts)
    cols = min(frames, 4)
    rows = math.ceil(frames / cols)
    body = []
    for idx, (k, s, sec) in enumerate(chosen):
        view = _Panel(lo, hi, (idx % cols) * PANEL, (idx // cols) * PANEL)
        bad = W.depth(sec) > tol
        body.append(_polygon(view(_window_outline(W, lo, hi)), "none", "#1f4e9c"))
        body.append(_polygon(view(sec), BAD_FILL if bad else OK_FILL, opacity=0.8))
        body.append(
            f'<text x="{_num(view.ox + PAD)}" y="{_num(view.oy + PAD)}" font-size="10" '
            f'font-family="monospace">stage {k} s={s:.3f}</text>'
        )
    return _document(cols * PANEL, rows * PANEL, body, f"{frames} sections")


def _stereo(u: np.ndarray) -> np.ndarray:
    # from the lower pole onto the equatorial plane; the upper hemisphere lands in the unit disc
    return u[:, :2] / (1.0 + u[:, 2:3])


def _circle_arcs(n: np.ndarray, c: float, samples: int = 181) -> list[np.ndarray]:
    """Pieces in the upper hemisphere of {u : <u, n> = c}."""
    if abs(c) >= 1:
        return []
    r = math.sqrt(max(0.0, 1 - c * c))
    helper = np.eye(3)[int(np.argmin(np.abs(n)))]
    e1 = np.cross(n, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    t = np.linspace(0, 2 * math.pi, samples)
    pts = c * n + r * (np.cos(t)[:, None] * e1 + np.sin(t)[:, None] * e2)
    keep = pts[:, 2] >= 0
    pieces, cur = [], []
    for p, k in zip(pts, keep):
        if k:
            cur.append(p)
        elif cur:
            pieces.append(np.array(cur))
            cur = []
    if cur:
        pieces.append(np.array(cur))
    return [p for p in pieces if len(p) > 1]


def render_region(K: Polytope, a: float, b: float, witness: SlidingWitness | None = None) -> str:
    """Stereographic sketch of the constraint circles bounding the two admissible regions."""
    body = []
    view = _Panel([-1.0, -1.0], [1.0, 1.0])
    centre = view(np.zeros((1, 2)))[0]
    body.append(
        f'<circle cx="{_num(centre[0])}" cy="{_num(centre[1])}" r="{_num(view.scale)}" '
        'fill="none" stroke="#999"/>'
    )
    for bound, colour in ((a, "#1f4e9c"), (b, "#b45f06")):
        region = admissible_region(K, bound)
        for n, c in region.constraints:
            for piece in _circle_arcs(n, c):
                body.append(
                    f'<polyline points="{_points(view(_stereo(piece)))}" fill="none" '
                    f'stroke="{colour}" stroke-width="1"/>'
                )
    if witness is not None:
        for u, colour in ((witness.x_axis, "#1f4e9c"), (witness.y_axis, "#b45f06")):
            u = u if u[2] >= 0 else -u
            (x, y), = view(_stereo(u[None, :]))
            body.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="4" fill="{colour}"/>')
    return _document(PANEL, PANEL, body, "admissible regions")


def render_svg(scene, artifact: str | None = None, path: MotionPath | None = None) -> str:
    """Render the requested artifact for a parsed scene."""
    artifact = artifact or scene.params.artifact
    K, W = scene.body(), scene.window_spec()
    if K is None:
        raise RenderError("rendering needs a polytope")
    if artifact == "region":
        if not isinstance(W, Rect):
            raise RenderError("the region sketch needs a rectangular window")
        res = slide_feasible(K, W.a, W.b, scene.params.tol)
        return render_region(K, W.a, W.b, res.witness)
    if W is None:
        raise RenderError(f"the {artifact} artifact needs a window")
    if artifact == "shadow":
        return render_shadow(K, W, scene.params.tol)
    if artifact == "sections":
        path = path if path is not None else scene.motion_path()
        if path is None:
            raise RenderError("the sections artifact needs a path")
        return render_sections(K, path, W, scene.params.frames, scene.params.tol)
    raise RenderError(f"unknown artifact {artifact!r}")
