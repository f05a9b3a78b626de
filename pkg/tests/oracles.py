"""Brute-force reference implementations, independent of the package.

Plain Python loops over pmf cells and sample rows, no imports from depmeas,
so an implementation bug cannot hide on both sides of a comparison. These
reproduce the reference computations frozen before the package was written.
"""

import math


def y_marginal(probs):
    return [sum(row[j] for row in probs) for j in range(len(probs[0]))]


def oracle_correlation_ratio(probs, y_codes):
    """Var(E[Y|X]) / Var(Y) by direct summation."""
    py = y_marginal(probs)
    mean_y = sum(p * c for p, c in zip(py, y_codes))
    var_y = sum(p * (c - mean_y) ** 2 for p, c in zip(py, y_codes))
    between = 0.0
    for row in probs:
        px = sum(row)
        if px > 0:
            cond_mean = sum(p * c for p, c in zip(row, y_codes)) / px
            between += px * (cond_mean - mean_y) ** 2
    return between / var_y


def oracle_entropy(dist):
    return -sum(p * math.log(p) for p in dist if p > 0)


def oracle_conditional_entropy(probs):
    h = 0.0
    for row in probs:
        px = sum(row)
        if px > 0:
            h += px * oracle_entropy([p / px for p in row])
    return h


def oracle_entropy_ratio(probs):
    """(H(Y) - H(Y|X)) / H(Y), nats, 0 log 0 = 0."""
    h_y = oracle_entropy(y_marginal(probs))
    return (h_y - oracle_conditional_entropy(probs)) / h_y


def oracle_zero_one_ratio(probs):
    """1 - (argmax conditional error) / (marginal-mode baseline error)."""
    baseline = 1.0 - max(y_marginal(probs))
    conditional = 1.0 - sum(max(row) for row in probs)
    return 1.0 - conditional / baseline


def oracle_triplet(y, x):
    """The three empirical ratios for binary y and categorical x, by loops."""
    n = len(y)
    groups = {}
    for yi, xi in zip(y, x):
        groups.setdefault(xi, []).append(yi)
    yhat = {g: sum(v) / len(v) for g, v in groups.items()}
    ybar = sum(y) / n

    ss_res = sum((yi - yhat[xi]) ** 2 for yi, xi in zip(y, x))
    ss_tot = sum((yi - ybar) ** 2 for yi in y)
    d1 = 1.0 - ss_res / ss_tot

    def loglik(yi, p):
        return math.log(p) if yi == 1 else math.log(1.0 - p)

    dev_cond = -2.0 * sum(loglik(yi, yhat[xi]) for yi, xi in zip(y, x))
    dev_null = -2.0 * sum(loglik(yi, ybar) for yi in y)
    d2 = 1.0 - dev_cond / dev_null

    pred = {g: 1.0 if p >= 0.5 else 0.0 for g, p in yhat.items()}
    base_pred = 1.0 if ybar >= 0.5 else 0.0
    err_cond = sum(1 for yi, xi in zip(y, x) if yi != pred[xi])
    err_base = sum(1 for yi in y if yi != base_pred)
    d3 = 1.0 - err_cond / err_base

    return d1, d2, d3
