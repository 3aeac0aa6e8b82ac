"""Writes the approximate 1959-2022 annual snapshot CSVs in this directory.

The figures below are approximate annual values for the series named in
README.md. They are not verbatim downloads; see README.md.
"""
import csv
import os

YEARS = list(range(1959, 2023))
HERE = os.path.dirname(os.path.abspath(__file__))

# CPI inflation, percent (1959-2022).
INFLATION = [1.01, 1.46, 1.07, 1.20, 1.24, 1.28, 1.59, 3.02, 2.77, 4.27, 5.46,
             5.84, 4.29, 3.27, 6.18, 11.05, 9.14, 5.74, 6.50, 7.63, 11.25,
             13.55, 10.33, 6.13, 3.21, 4.30, 3.55, 1.90, 3.66, 4.08, 4.83,
             5.40, 4.23, 3.03, 2.95, 2.61, 2.81, 2.93, 2.34, 1.55, 2.19,
             3.38, 2.83, 1.59, 2.27, 2.68, 3.39, 3.23, 2.85, 3.84, -0.36,
             1.64, 3.16, 2.07, 1.46, 1.62, 0.12, 1.26, 2.13, 2.44, 1.81,
             1.23, 4.70, 8.00]

# 1-year constant-maturity Treasury yield, annual average, percent (1960-2022).
YIELD = [3.55, 2.91, 3.02, 3.28, 3.76, 4.09, 5.17, 4.84, 5.62, 7.06,
         6.90, 4.89, 4.95, 7.32, 8.20, 6.78, 5.88, 6.08, 8.34, 10.65,
         12.00, 14.80, 12.27, 9.58, 10.91, 8.42, 6.45, 6.77, 7.65, 8.53,
         7.89, 5.86, 3.89, 3.43, 5.32, 5.94, 5.52, 5.63, 5.05, 5.08,
         6.11, 3.49, 2.00, 1.24, 1.89, 3.62, 4.94, 4.53, 1.83, 0.47,
         0.32, 0.18, 0.17, 0.13, 0.12, 0.32, 0.61, 1.20, 2.33, 2.05,
         0.37, 0.10, 2.80]

# S&P 500 year-end level (1959-2022) and total return incl. dividends, percent (1960-2022).
SP_LEVEL = [59.89, 58.11, 71.55, 63.10, 75.02, 84.75, 92.43, 80.33, 96.47, 103.86,
            92.06, 92.15, 102.09, 118.05, 97.55, 68.56, 90.19, 107.46, 95.10, 96.11,
            107.94, 135.76, 122.55, 140.64, 164.93, 167.24, 211.28, 242.17, 247.08,
            277.72, 353.40, 330.22, 417.09, 435.71, 466.45, 459.27, 615.93, 740.74,
            970.43, 1229.23, 1469.25, 1320.28, 1148.09, 879.82, 1111.92, 1211.92,
            1248.29, 1418.30, 1468.36, 903.25, 1115.10, 1257.64, 1257.60, 1426.19,
            1848.36, 2058.90, 2043.94, 2238.83, 2673.61, 2506.85, 3230.78, 3756.07,
            4766.18, 3839.50]
SP_TOTAL = [0.47, 26.89, -8.73, 22.80, 16.48, 12.45, -10.06, 23.98, 11.06, -8.50,
            4.01, 14.31, 18.98, -14.66, -26.47, 37.20, 23.84, -7.18, 6.56, 18.44,
            32.42, -4.91, 21.55, 22.56, 6.27, 31.73, 18.67, 5.25, 16.61, 31.69,
            -3.10, 30.47, 7.62, 10.08, 1.32, 37.58, 22.96, 33.36, 28.58, 21.04,
            -9.10, -11.89, -22.10, 28.68, 10.88, 4.91, 15.79, 5.49, -37.00, 26.46,
            15.06, 2.11, 16.00, 32.39, 13.69, 1.38, 11.96, 21.83, -4.38, 31.49,
            18.40, 28.71, -18.11]

# Real aggregate growth, percent (1960-2022), and population growth, percent.
SERVICES_GROWTH = [4.6, 3.9, 4.6, 4.2, 5.1, 5.2, 5.4, 4.6, 5.2, 4.8,
                   3.9, 3.8, 5.2, 4.6, 2.8, 3.2, 4.4, 4.0, 4.4, 2.9,
                   1.9, 1.7, 2.1, 4.6, 4.2, 4.9, 4.1, 3.8, 4.0, 2.7,
                   2.5, 1.3, 3.0, 3.0, 2.7, 2.8, 2.9, 3.3, 4.2, 4.2,
                   4.6, 2.8, 2.0, 2.1, 3.0, 2.9, 2.5, 2.0, 0.6, -0.4,
                   1.1, 1.5, 1.0, 1.1, 2.4, 2.9, 2.5, 2.1, 2.5, 1.7,
                   -6.6, 6.3, 3.6]
NONDURABLES_GROWTH = [1.6, 1.6, 3.0, 2.3, 4.3, 4.9, 4.8, 1.9, 4.4, 2.7,
                      2.3, 2.0, 4.1, 3.3, -2.3, 1.3, 4.7, 2.6, 2.8, 1.9,
                      -0.1, 1.0, 0.9, 2.9, 3.3, 2.8, 3.6, 2.0, 2.8, 2.1,
                      0.7, -0.8, 2.3, 2.5, 3.4, 2.2, 2.8, 2.5, 4.5, 5.2,
                      3.6, 2.3, 2.5, 3.6, 3.4, 3.6, 3.4, 2.3, -1.7, -1.0,
                      2.1, 0.9, 0.6, 1.9, 2.4, 2.6, 2.5, 2.2, 2.8, 2.6,
                      3.7, 8.5, -0.6]
POPULATION_GROWTH = [1.7, 1.7, 1.5, 1.5, 1.4, 1.3, 1.1, 1.1, 1.0, 1.0,
                     1.2, 1.3, 1.1, 1.0, 0.9, 1.0, 0.95, 1.0, 1.05, 1.1,
                     1.0, 1.0, 1.0, 0.9, 0.9, 0.9, 0.9, 0.9, 0.9, 0.95,
                     1.1, 1.3, 1.4, 1.3, 1.2, 1.2, 1.2, 1.2, 1.2, 1.1,
                     1.1, 1.0, 0.9, 0.9, 0.9, 0.9, 1.0, 1.0, 0.95, 0.9,
                     0.8, 0.7, 0.7, 0.7, 0.7, 0.7, 0.7, 0.6, 0.5, 0.5,
                     0.5, 0.2, 0.4]


def per_capita_levels(start, growth):
    levels = [start]
    for g, p in zip(growth, POPULATION_GROWTH):
        levels.append(levels[-1] * (1 + g / 100) / (1 + p / 100))
    return levels


def write(name, header, rows):
    with open(os.path.join(HERE, name), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def main():
    write("cpi_inflation.csv", ["year", "value"], [(y, v) for y, v in zip(YEARS, INFLATION)])
    write("treasury_1y.csv", ["year", "value"], [(y, v) for y, v in zip(YEARS[1:], YIELD)])

    # Price level, 2022 = 1.
    cpi = [1.0]
    for infl in INFLATION[1:]:
        cpi.append(cpi[-1] * (1 + infl / 100))
    cpi = [c / cpi[-1] for c in cpi]

    rows = [(YEARS[0], round(SP_LEVEL[0] / cpi[0], 4), "")]
    for k in range(1, len(YEARS)):
        dividend = SP_LEVEL[k - 1] * (1 + SP_TOTAL[k - 1] / 100) - SP_LEVEL[k]
        rows.append((YEARS[k], round(SP_LEVEL[k] / cpi[k], 4), round(dividend / cpi[k], 4)))
    write("sp500_real.csv", ["year", "index", "dividend"], rows)

    services = per_capita_levels(7500.0, SERVICES_GROWTH)
    nondurables = per_capita_levels(4100.0, NONDURABLES_GROWTH)
    write("pce_services_per_capita.csv", ["year", "value"], [(y, round(v, 2)) for y, v in zip(YEARS, services)])
    write("pce_nondurables_per_capita.csv", ["year", "value"], [(y, round(v, 2)) for y, v in zip(YEARS, nondurables)])


if __name__ == "__main__":
    main()
