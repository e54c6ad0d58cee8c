#!/usr/bin/env python3
"""Writes the synthetic EUC_2D point clouds that pad out data/corpus.

The output is fully determined by the table below; rerunning the script
reproduces the committed files byte for byte.
"""
import math
import pathlib
import random
import sys

# name, point count, layout, seed
CLOUDS = [
    ("syn_u060", 60, "uniform", 11),
    ("syn_c075", 75, "clustered", 12),
    ("syn_u090", 90, "uniform", 13),
    ("syn_c101", 101, "clustered", 14),
    ("syn_u120", 120, "uniform", 15),
    ("syn_r150", 150, "ring", 16),
    ("syn_c180", 180, "clustered", 17),
    ("syn_u225", 225, "uniform", 18),
    ("syn_c280", 280, "clustered", 19),
]

SIDE = 1000


def uniform(rng, count):
    return [(rng.randint(0, SIDE), rng.randint(0, SIDE)) for _ in range(count)]


def clustered(rng, count):
    centers = [(rng.uniform(100, 900), rng.uniform(100, 900)) for _ in range(rng.randint(3, 6))]
    points = []
    while len(points) < count:
        cx, cy = rng.choice(centers)
        x = round(rng.gauss(cx, 70))
        y = round(rng.gauss(cy, 70))
        if 0 <= x <= SIDE and 0 <= y <= SIDE:
            points.append((x, y))
    return points


def ring(rng, count):
    points = []
    for _ in range(count):
        angle = rng.uniform(0, 2 * math.pi)
        radius = rng.uniform(250, 450)
        points.append((round(500 + radius * math.cos(angle)), round(500 + radius * math.sin(angle))))
    return points


LAYOUTS = {"uniform": uniform, "clustered": clustered, "ring": ring}


def main(out_dir):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, count, layout, seed in CLOUDS:
        rng = random.Random(seed)
        points = LAYOUTS[layout](rng, count)
        lines = [
            f"NAME : {name}",
            f"COMMENT : synthetic {layout} cloud, seed {seed}",
            "TYPE : TSP",
            f"DIMENSION : {count}",
            "EDGE_WEIGHT_TYPE : EUC_2D",
            "NODE_COORD_SECTION",
        ]
        lines += [f"{i} {x} {y}" for i, (x, y) in enumerate(points, start=1)]
        lines.append("EOF")
        (out / f"{name}.tsp").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/corpus")
