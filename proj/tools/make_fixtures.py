#!/usr/bin/env python3
"""Regenerates the synthetic country fixtures under tests/fixtures/.

Each country gets a GDP-per-capita path with US-like cyclical growth and rate
series generated from a two-segment integrated Okun model with reference
coefficient sets plus Gaussian level noise. Output is deterministic for a
given seed; the committed CSVs are the source of truth for the tests.
"""

import json
import math
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def growth_path(rng, years, blocks, sd):
    """Percent log growth per year; each (first, last, mean) block is
    re-centred to hit its mean exactly."""
    g = {}
    shocks = rng.normal(0.0, sd, len(years))
    # mild persistence, as in recessions spanning two years
    for i in range(1, len(shocks)):
        shocks[i] += 0.3 * shocks[i - 1]
    for y, s in zip(years, shocks):
        g[y] = s
    for first, last, mean in blocks:
        ys = [y for y in years if first <= y <= last]
        m = np.mean([g[y] for y in ys])
        for y in ys:
            g[y] = g[y] - m + mean
    return g


def gdp_levels(first_year, last_year, growth, final_level):
    levels = {first_year: 1.0}
    for y in range(first_year + 1, last_year + 1):
        levels[y] = levels[y - 1] * math.exp(growth[y] / 100.0)
    scale = final_level / levels[last_year]
    return {y: v * scale for y, v in levels.items()}


def model_levels(gdp, first, last, anchor_value, break_year, seg1, seg2, lag=0):
    """seg = (slope, trend); segment 2 anchored at segment 1's prediction."""
    def x(t, base):
        return 100.0 * math.log(gdp[t - lag] / gdp[base - lag])

    def s1(t):
        return anchor_value + seg1[0] * x(t, first) + seg1[1] * (t - first)

    anchor2 = s1(break_year)
    out = {}
    for t in range(first, last + 1):
        if t < break_year:
            out[t] = s1(t)
        else:
            out[t] = anchor2 + seg2[0] * x(t, break_year) + seg2[1] * (t - break_year)
    return out


def write_series(name, series, digits):
    with open(OUT / name, "w", newline="\n") as f:
        f.write("year,value\n")
        for y in sorted(series):
            f.write(f"{y},{series[y]:.{digits}f}\n")


def noisy(rng, levels, sd):
    return {y: v + rng.normal(0.0, sd) for y, v in levels.items()}


def us(rng):
    years = list(range(1949, 2011))
    # Mean log growth 2.09 %/yr over 1951-2010 and 1.65 %/yr over 1979-2010.
    g = growth_path(rng, years, [(1949, 1950, 3.0), (1951, 1978, (125.4 - 52.8) / 28), (1979, 2010, 1.65)], 2.3)
    gdp = gdp_levels(1948, 2010, g, 47000.0)
    u = noisy(rng, model_levels(gdp, 1951, 2010, 3.3, 1979, (-0.406, 1.113), (-0.465, 0.866)), 0.35)
    u[1951] = 3.3

    # Employment built from du so that regressing du on -de gives slope 1.24
    # and R^2 0.88: -de = (du - mean)/k - drift - eta with eta orthogonal to
    # (1, du) and scaled exactly.
    ys = list(range(1952, 2011))
    du = np.array([u[y] - u[y - 1] for y in ys])
    r2, slope = 0.88, 1.24
    k = slope / r2
    z = rng.normal(0.0, 1.0, len(ys))
    design = np.column_stack([np.ones_like(du), du])
    z -= design @ np.linalg.lstsq(design, z, rcond=None)[0]
    dc = du - du.mean()
    s_dudu = float(dc @ dc)
    z *= math.sqrt(s_dudu / k**2 * (1.0 / r2 - 1.0) / float(z @ z))
    de = -(dc / k) + 0.04 + z
    e = {1951: 56.0}
    for y, d in zip(ys, de):
        e[y] = e[y - 1] + d

    write_series("us_gdp.csv", gdp, 1)
    write_series("us_unemployment.csv", u, 2)
    write_series("us_employment.csv", e, 2)


def employment_country(rng, code, gdp_first, first, break_year, seg1, seg2, e0, sd, blocks, final_gdp, lag=0,
                       shift=None):
    years = list(range(gdp_first + 1, 2011))
    g = growth_path(rng, years, blocks, 2.0)
    gdp = gdp_levels(gdp_first, 2010, g, final_gdp)
    e = noisy(rng, model_levels(gdp, first, 2010, e0, break_year, seg1, seg2, lag), sd)
    e[first] = e0
    if shift:
        year, magnitude = shift
        e = {y: v + (magnitude if y >= year else 0.0) for y, v in e.items()}
    write_series(f"{code}_gdp.csv", gdp, 1)
    write_series(f"{code}_employment.csv", e, 2)


def synthetic():
    """Noise-free employment series for exact-recovery checks."""
    rng = np.random.default_rng(7)
    years = list(range(1961, 2011))
    g = growth_path(rng, years, [(1961, 2010, 2.0)], 2.0)
    gdp = gdp_levels(1960, 2010, g, 30000.0)
    e = model_levels(gdp, 1961, 2010, 58.0, 1985, (0.30, -0.50), (0.45, -0.80))
    with open(OUT / "synthetic_gdp.csv", "w", newline="\n") as f:
        f.write("year,value\n")
        for y in sorted(gdp):
            f.write(f"{y},{gdp[y]:.17g}\n")
    with open(OUT / "synthetic_employment.csv", "w", newline="\n") as f:
        f.write("year,value\n")
        for y in sorted(e):
            f.write(f"{y},{e[y]:.17g}\n")


def manifest():
    def country(code, target, variant, unemployment=False, shifts=(), fit=None):
        c = {
            "gdp_variant": variant,
            "gdp_per_capita": {"path": f"{code}_gdp.csv", "unit": "currency-per-capita"},
            "employment_rate": {"path": f"{code}_employment.csv", "unit": "percent-points"},
            "fit": {"target": target, **(fit or {})},
        }
        if unemployment:
            c["unemployment_rate"] = {"path": f"{code}_unemployment.csv", "unit": "percent-points"}
        if shifts:
            c["level_shifts"] = [{"series": s, "year": y, "magnitude": m} for s, y, m in shifts]
        return c

    m = {
        "schema_version": 1,
        "output_dir": "out",
        "fit": {"break_from": 1975, "break_to": 1995, "lags": [0, 1], "min_segment_obs": 5},
        "countries": {
            "us": country("us", "unemployment", "synthetic, 2010 EKS-like dollars", unemployment=True),
            "japan": country("japan", "employment", "synthetic"),
            "uk": country("uk", "employment", "synthetic"),
            "canada": country("canada", "employment", "synthetic"),
            "france": country("france", "employment", "synthetic", shifts=[("employment", 1982, 2.1)]),
            "australia": country("australia", "employment", "synthetic"),
            "synthetic": country("synthetic", "employment", "noise-free synthetic", fit={"lags": [0]}),
        },
        "scenarios": {
            "linear": {"rule": "constant_increment", "increment": 591.5, "horizon": 2050},
            "exponential": {"rule": "exponential", "rate": 0.0209, "horizon": 2050},
            "threshold": {"rule": "threshold", "horizon": 2050},
        },
    }
    with open(OUT / "manifest.json", "w", newline="\n") as f:
        json.dump(m, f, indent=2)
        f.write("\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20110720)
    us(rng)
    employment_country(rng, "japan", 1968, 1970, 1978, (0.02, -0.53), (0.14, -0.42), 64.0, 0.50,
                       [(1969, 1978, 3.5), (1979, 1990, 3.3), (1991, 2010, 0.7)], 33000.0)
    employment_country(rng, "uk", 1968, 1971, 1983, (0.41, -1.11), (0.41, -0.81), 61.0, 0.47,
                       [(1969, 1982, 1.9), (1983, 2010, 2.1)], 35000.0, lag=1)
    employment_country(rng, "canada", 1968, 1970, 1984, (0.40, -0.67), (0.44, -0.56), 54.5, 0.83,
                       [(1969, 1983, 2.6), (1984, 2010, 1.6)], 38000.0)
    employment_country(rng, "france", 1968, 1970, 1994, (0.155, -0.65), (0.250, -0.30), 56.0, 0.39,
                       [(1969, 1993, 2.2), (1994, 2010, 1.3)], 33000.0, shift=(1982, 2.1))
    employment_country(rng, "australia", 1968, 1970, 1983, (0.50, -0.92), (0.41, -1.08), 58.0, 0.80,
                       [(1969, 1982, 1.5), (1983, 2010, 2.2)], 39000.0)
    synthetic()
    manifest()


if __name__ == "__main__":
    main()
