"""Raster output: the diagonal-slice heat map and limit-set point clouds."""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .markoff import (DEFAULT_GROWTH, DEFAULT_TRAPPED, Bowditch, SearchBudget,
                      Slope, survey)
from .mobius import fixed_points, is_inf
from .pleating import LOSParams

BLACK = (0, 0, 0)
WHITE = (255, 255, 255)


@dataclass(frozen=True)
class GridSpec:
    """Rectangle in the complex plane sampled at pixel centres.

    Pixel (0, 0) is the top-left cell, whose corner is (re_min, im_max).
    """

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    width: int
    height: int

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("empty grid rectangle")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("grid size must be positive")

    def point(self, col: int, row: int) -> complex:
        re = self.re_min + (col + 0.5) * (self.re_max - self.re_min) / self.width
        im = self.im_max - (row + 0.5) * (self.im_max - self.im_min) / self.height
        return complex(re, im)

    def pixel(self, z: complex):
        """Nearest pixel (col, row) for z, or None when z is off the grid."""
        col = math.floor((z.real - self.re_min) / (self.re_max - self.re_min) * self.width)
        row = math.floor((self.im_max - z.imag) / (self.im_max - self.im_min) * self.height)
        if 0 <= col < self.width and 0 <= row < self.height:
            return col, row
        return None


DEFAULT_SLICE = (-7.0, 8.0, -5.0, 5.0)


@dataclass
class RasterImage:
    width: int
    height: int
    pixels: np.ndarray  # (height, width, 3) uint8, row-major

    @classmethod
    def blank(cls, width: int, height: int, color=BLACK) -> RasterImage:
        px = np.empty((height, width, 3), dtype=np.uint8)
        px[...] = color
        return cls(width, height, px)

    def __post_init__(self):
        if self.pixels.shape != (self.height, self.width, 3):
            raise ValueError("pixel array does not match the image size")

    def __eq__(self, other):
        return (isinstance(other, RasterImage) and self.width == other.width
                and self.height == other.height
                and np.array_equal(self.pixels, other.pixels))


@dataclass(frozen=True)
class PixelValue:
    x: complex
    psi: float
    argmin: Slope
    converged: bool
    inside: bool


def _round_half_up(v: float) -> int:
    return int(math.floor(v + 0.5))


def color_map(v: float) -> tuple[int, int, int]:
    """Blue at 1, green at 3, red at 5; values outside [1, 5] are clamped."""
    v = min(5.0, max(1.0, v))
    t = (v - 1) / 4
    return (_round_half_up(255 * t),
            _round_half_up(255 * (1 - abs(2 * t - 1))),
            _round_half_up(255 * (1 - t)))


def _slice_rows(args):
    grid, budget, rows, growth, trapped_limit = args
    out = []
    for row in rows:
        line = []
        for col in range(grid.width):
            x = grid.point(col, row)
            r = survey(x, budget, stop_outside=True, growth=growth,
                       trapped_limit=trapped_limit)
            line.append(PixelValue(x, r.value, r.argmin, r.converged,
                                   r.status is Bowditch.INSIDE))
        out.append(line)
    return out


def render_slice(grid: GridSpec, budget: SearchBudget = SearchBudget(), *,
                 workers: int = 1, growth: float = DEFAULT_GROWTH,
                 trapped_limit: int = DEFAULT_TRAPPED):
    """Heat map of the infimum estimate over ``grid``.

    Pixels certified inside the Bowditch set are coloured by the estimate;
    everything else (outside or inconclusive) is black.  Returns the image
    and the per-pixel value table in row-major order.  Rows are computed
    independently, so the output does not depend on ``workers``.
    """
    n_chunks = max(1, min(grid.height, workers * 4))
    chunks = [list(range(grid.height))[i::n_chunks] for i in range(n_chunks)]
    jobs = [(grid, budget, rows, growth, trapped_limit) for rows in chunks]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_slice_rows, jobs))
    else:
        results = [_slice_rows(job) for job in jobs]

    table_rows = [None] * grid.height
    for rows, lines in zip(chunks, results):
        for row, line in zip(rows, lines):
            table_rows[row] = line

    img = RasterImage.blank(grid.width, grid.height)
    table = []
    for row, line in enumerate(table_rows):
        for col, pv in enumerate(line):
            if pv.inside:
                img.pixels[row, col] = color_map(pv.psi)
            table.append(pv)
    return img, table


def write_value_csv(table, path) -> None:
    """Columns: x_re, x_im, psi, slope_p, slope_q, converged, inside."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x_re", "x_im", "psi", "slope_p", "slope_q", "converged", "inside"])
        for pv in table:
            w.writerow([repr(pv.x.real), repr(pv.x.imag), repr(pv.psi), pv.argmin.p,
                        pv.argmin.q, int(pv.converged), int(pv.inside)])


# --- limit sets --------------------------------------------------------------


def _attracting_points(mats: np.ndarray) -> np.ndarray:
    """Attracting fixed points of the loxodromic matrices in ``mats``.

    Uses the eigenvalue lam with |lam| > 1 and whichever of
    z = (lam - d)/c, z = b/(lam - a) is better conditioned.  Non-loxodromic
    entries give nan.
    """
    a, b, c, d = mats[:, 0, 0], mats[:, 0, 1], mats[:, 1, 0], mats[:, 1, 1]
    t = a + d
    disc = np.sqrt(t * t - 4)
    lam = (t + disc) / 2
    small = np.abs(lam) < 1
    lam = np.where(small, (t - disc) / 2, lam)
    lox = np.abs(lam) > 1 + 1e-9
    with np.errstate(divide="ignore", invalid="ignore"):
        z1 = (lam - d) / c
        z2 = b / (lam - a)
        z = np.where(np.abs(c) >= np.abs(lam - a), z1, z2)
    return np.where(lox, z, np.nan + 0j)


def _orbit_of_infinity(mats: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        z = mats[:, 0, 0] / mats[:, 1, 0]
    return np.where(mats[:, 1, 0] != 0, z, np.nan + 0j)


def limit_set_points(params: LOSParams, max_word_length: int) -> np.ndarray:
    """Points accumulating on the limit set of <M, N_{sigma, mu}>.

    Reduced words in M, N and their inverses are enumerated breadth-first
    up to ``max_word_length``.  Each word contributes the attracting fixed
    point (if loxodromic) and the image of infinity, the parabolic fixed
    point of M.  Length 0 gives only the fixed points of the generators.
    """
    M, N = params.matrices()
    gens = []
    for g in (M, N, M.inverse(), N.inverse()):
        gens.append(np.array([[g.a, g.b], [g.c, g.d]], dtype=complex))
    gens = np.array(gens)
    inverse_of = np.array([2, 3, 0, 1])

    points = [np.array([z for z in fixed_points(N) if not is_inf(z)], dtype=complex)]

    level = gens.copy()
    last = np.arange(4)
    for length in range(1, max_word_length + 1):
        points.append(_attracting_points(level))
        points.append(_orbit_of_infinity(level))
        if length == max_word_length:
            break
        nxt, nlast = [], []
        for g in range(4):
            keep = last != inverse_of[g]
            nxt.append(level[keep] @ gens[g])
            nlast.append(np.full(int(keep.sum()), g))
        level = np.concatenate(nxt)
        last = np.concatenate(nlast)
    pts = np.concatenate(points)
    return pts[np.isfinite(pts)]


def render_limit_set(params: LOSParams, max_word_length: int, grid: GridSpec) -> RasterImage:
    """Black points on white, nearest-pixel plotting."""
    img = RasterImage.blank(grid.width, grid.height, WHITE)
    pts = limit_set_points(params, max_word_length)
    w, h = grid.width, grid.height
    cols = np.floor((pts.real - grid.re_min) / (grid.re_max - grid.re_min) * w)
    rows = np.floor((grid.im_max - pts.imag) / (grid.im_max - grid.im_min) * h)
    ok = (cols >= 0) & (cols < w) & (rows >= 0) & (rows < h)
    img.pixels[rows[ok].astype(int), cols[ok].astype(int)] = BLACK
    return img


# --- PPM ---------------------------------------------------------------------


def encode_ppm(img: RasterImage) -> bytes:
    header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(img.pixels, dtype=np.uint8).tobytes()


def write_ppm(img: RasterImage, path) -> None:
    with open(os.fspath(path), "wb") as fh:
        fh.write(encode_ppm(img))


def read_ppm(path) -> RasterImage:
    with open(os.fspath(path), "rb") as fh:
        data = fh.read()
    # header: magic, width, height, maxval, each followed by one whitespace byte
    fields, pos = [], 0
    while len(fields) < 4:
        while data[pos:pos + 1].isspace():
            pos += 1
        start = pos
        while not data[pos:pos + 1].isspace():
            pos += 1
        fields.append(data[start:pos])
    pos += 1
    if fields[0] != b"P6" or int(fields[3]) != 255:
        raise ValueError("only 8-bit binary PPM (P6) is supported")
    w, h = int(fields[1]), int(fields[2])
    px = np.frombuffer(data[pos:pos + 3 * w * h], dtype=np.uint8).reshape(h, w, 3).copy()
    return RasterImage(w, h, px)
