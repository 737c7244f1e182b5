"""Synthetic calibration samples used by the bundled scenarios.

self_anchor_samples.csv: net self-anchoring force of a 15 mm tip extender,
    F = 33.33 (h - h^2 / 0.12), zero crossing at 12 cm.
tip_insertion_samples.csv / rigid_insertion_samples.csv: linear insertion
    traces of slope 10 N/m and 100 N/m.
"""
import csv

def write(name, rows):
    with open(name, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["depth_m", "force_N", "regime"])
        for depth, force, regime in rows:
            w.writerow([f"{depth:.4f}", f"{force:.6g}", regime])

depths = [0.03 + 0.015 * i for i in range(9)]
write("self_anchor_samples.csv",
      [(h, 33.33 * (h - h * h / 0.12), "self_anchor_weight") for h in depths])

depths = [0.015 * i for i in range(1, 11)]
write("tip_insertion_samples.csv",
      [(z, 10.0 * z, "constrained_tip_insertion") for z in depths])
write("rigid_insertion_samples.csv",
      [(z, 100.0 * z, "rigid_insertion") for z in depths])
