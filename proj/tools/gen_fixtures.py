#!/usr/bin/env python3
"""Regenerate the synthetic fixtures under data/.

Trajectories are written in KITTI odometry ground-truth format (row-major
3x4 [R | t] per line, camera z axis forward, motion in the x-z plane).
Feature counts are one integer per line. Outputs are deterministic.
"""

import json
import pathlib

import numpy as np

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def pose_line(x, z, heading):
    c, s = np.cos(heading), np.sin(heading)
    r = np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    m = np.hstack([r, np.array([[x], [0.0], [z]])])
    return " ".join(f"{v:.9e}" for v in m.ravel())


def path_poses(xs, zs):
    dx = np.gradient(xs)
    dz = np.gradient(zs)
    headings = np.arctan2(dx, dz)
    return [pose_line(x, z, h) for x, z, h in zip(xs, zs, headings)]


def write_lines(name, lines):
    (DATA / name).write_text("\n".join(lines) + "\n")


def features(rng, n, low, high, phase):
    t = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    base = low + (high - low) * 0.5 * (1.0 + np.sin(t + phase))
    return [str(int(v)) for v in base + rng.integers(0, 40, n)]


def figure_eight(rng):
    n = 100
    t = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    x1, z1 = 40.0 * np.sin(t), 25.0 * np.sin(2.0 * t)
    # Robot 2 runs the same figure reversed with a small lateral offset.
    x2, z2 = 40.0 * np.sin(-t + 0.3) + 2.0, 25.0 * np.sin(2.0 * (-t + 0.3)) + 1.5
    write_lines("figure_eight_1.txt", path_poses(x1, z1))
    write_lines("figure_eight_2.txt", path_poses(x2, z2))
    write_lines("figure_eight_1.features", features(rng, n, 300, 1500, 0.0))
    write_lines("figure_eight_2.features", features(rng, n, 300, 1500, np.pi))


def two_loop(rng):
    n = 120
    t = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    x1, z1 = 50.0 * np.cos(t), 35.0 * np.sin(t)
    x2, z2 = 55.0 + 50.0 * np.cos(t + np.pi), 3.0 + 35.0 * np.sin(t + np.pi)
    write_lines("two_loop_1.txt", path_poses(x1, z1))
    write_lines("two_loop_2.txt", path_poses(x2, z2))
    write_lines("two_loop_1.features", features(rng, n, 200, 1800, 0.0))
    write_lines("two_loop_2.features", features(rng, n, 200, 1800, 1.3))


def elongated_loop(rng):
    # Racetrack driven twice; the first lap is robot 1, the second robot 2.
    per_lap = 150
    lines, counts = [], []
    for lap in range(2):
        s = np.linspace(0.0, 1.0, per_lap, endpoint=False)
        straight, radius = 200.0, 30.0
        perimeter = 2.0 * straight + 2.0 * np.pi * radius
        d = s * perimeter
        xs, zs = np.empty(per_lap), np.empty(per_lap)
        for i, di in enumerate(d):
            if di < straight:
                xs[i], zs[i] = radius, di
            elif di < straight + np.pi * radius:
                a = (di - straight) / radius
                xs[i], zs[i] = radius * np.cos(a), straight + radius * np.sin(a)
            elif di < 2.0 * straight + np.pi * radius:
                xs[i], zs[i] = -radius, straight - (di - straight - np.pi * radius)
            else:
                a = np.pi + (di - 2.0 * straight - np.pi * radius) / radius
                xs[i], zs[i] = radius * np.cos(a), radius * np.sin(a)
        xs = xs + rng.normal(0.0, 0.8, per_lap) + 1.5 * lap
        zs = zs + rng.normal(0.0, 0.8, per_lap)
        lines += path_poses(xs, zs)
        counts += features(rng, per_lap, 250, 1600, 2.1 * lap)
    write_lines("elongated_loop.txt", lines)
    write_lines("elongated_loop.features", counts)


def scores(rng):
    n1, n2 = 60, 50
    lines = []
    for u in range(n1):
        for v in range(n2):
            s = rng.beta(1.2, 4.0)
            if abs(u * n2 / n1 - v) < 3:
                s = min(1.0, s + 0.5)
            lines.append(f"{u} {v} {s:.4f}")
    write_lines("scores.txt", lines)
    write_lines("scores_1.features", [str(int(v)) for v in rng.integers(100, 2000, n1)])
    write_lines("scores_2.features", [str(int(v)) for v in rng.integers(100, 2000, n2)])


def small_graphs():
    fig2 = {
        "v1": [{"id": i, "scan_size": 1} for i in range(4)],
        "v2": [{"id": i, "scan_size": 1} for i in range(4)],
        "edges": [{"u": 0, "v": j} for j in range(4)] + [{"u": i, "v": 0} for i in range(1, 4)],
    }
    (DATA / "fig2.json").write_text(json.dumps(fig2, indent=2) + "\n")
    single = {
        "v1": [{"id": 0, "scan_size": 5}],
        "v2": [{"id": 0, "scan_size": 3}],
        "edges": [{"u": 0, "v": 0, "cost": 1}],
    }
    (DATA / "single_edge.json").write_text(json.dumps(single, indent=2) + "\n")
    (DATA / "malformed.json").write_text('{"v1": [{"id": 0, "scan_size": 1}], "v2": [\n')
    dup = {
        "v1": [{"id": 0, "scan_size": 1}],
        "v2": [{"id": 0, "scan_size": 1}],
        "edges": [{"u": 0, "v": 0}, {"u": 0, "v": 0}],
    }
    (DATA / "duplicate_edge.json").write_text(json.dumps(dup, indent=2) + "\n")
    (DATA / "fig2_truth_a1b1.txt").write_text("0 0\n")
    (DATA / "fig2_truth_b1a2.txt").write_text("1 0\n")


def main():
    DATA.mkdir(exist_ok=True)
    rng = np.random.default_rng(20180521)
    figure_eight(rng)
    two_loop(rng)
    elongated_loop(rng)
    scores(rng)
    small_graphs()


if __name__ == "__main__":
    main()
