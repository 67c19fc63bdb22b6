"""Regenerates catch22_reference.json from the reference pycatch22 package.

Test-only oracle: run `python3 make_catch22_reference.py` with pycatch22
installed. The C++ feature code never reads this script.
"""
import json

import numpy as np
import pycatch22


def series_corpus():
    rng = np.random.default_rng(20221018)
    out = []
    out.append(("white_256", rng.standard_normal(256)))
    ar = np.zeros(500)
    e = rng.standard_normal(500)
    for i in range(1, 500):
        ar[i] = 0.8 * ar[i - 1] + e[i]
    out.append(("ar1_500", ar))
    t = np.arange(1000) / 100.0
    out.append(("sine_noise_1000", np.sin(2 * np.pi * 7.0 * t) + 0.3 * rng.standard_normal(1000)))
    out.append(("random_walk_300", np.cumsum(rng.standard_normal(300))))
    out.append(("uniform_128", rng.uniform(-2.0, 5.0, 128)))
    burst = 0.2 * rng.standard_normal(1500)
    tt = np.arange(1500 - 600) / 100.0
    burst[600:] += 3.0 * np.exp(-tt / 1.5) * np.sin(2 * np.pi * 12.0 * tt)
    out.append(("wavelet_burst_1500", burst))
    out.append(("lognormal_400", rng.lognormal(0.0, 0.8, 400)))
    out.append(("trend_noise_640", 0.01 * np.arange(640) + rng.standard_normal(640)))
    chirp_t = np.arange(800) / 200.0
    out.append(("chirp_800", np.sin(2 * np.pi * (2.0 + 3.0 * chirp_t) * chirp_t) + 0.1 * rng.standard_normal(800)))
    out.append(("short_laplace_50", rng.laplace(0.0, 1.0, 50)))
    return out


def main():
    names = None
    records = []
    for name, y in series_corpus():
        res = pycatch22.catch22_all(list(map(float, y)))
        names = res["names"]
        records.append({"name": name, "samples": [float(v) for v in y],
                        "values": [float(v) for v in res["values"]]})
    with open("catch22_reference.json", "w") as fh:
        json.dump({"feature_names": names, "series": records}, fh, indent=1)


if __name__ == "__main__":
    main()
