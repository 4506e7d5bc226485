"""Empirical check of the local red-angle lemmas on random closed links."""

import logging

import numpy as np
import pandas as pd

from rectipoly.errors import SamplingFailure
from rectipoly.helpers import fill_kwargs
from rectipoly.multithreaded import chunk_apply
from rectipoly.spherical import local_constraint_check, sample_closed_link

__all__ = ["SWEEP_COLUMNS", "lemma_sweep", "red_count_histogram", "sweep_violations", "parse_degrees"]

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["Degree", "Sample", "RedCount", "Status", "Lemma", "Antipodal", "Plus"]


def _sweep_chunk(degree, samples, seed, tol, retries, green):
    rng = np.random.default_rng(seed)

    rows = []
    for sample in range(samples):
        try:
            link = sample_closed_link(degree, seed=rng, tol=tol, retries=retries, green=green)
        except SamplingFailure as e:
            logger.warning("degree %d, sample %d: %s", degree, sample, e)
            rows.append((degree, sample, -1, "SamplingFailure", None, None, None))
            continue

        verdict = local_constraint_check(link, tol=tol)
        rows.append(
            (
                degree,
                sample,
                verdict.red_count,
                verdict.status,
                verdict.lemma,
                verdict.detail.get("antipodal"),
                verdict.detail.get("plus"),
            )
        )

    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)


def _samples_per_degree(samples, degrees):
    base, extra = divmod(samples, len(degrees))
    return [base + (i < extra) for i in range(len(degrees))]


def parse_degrees(text):
    """Degrees from "a..b" (inclusive) or a single integer.

    Examples
    --------
    >>> parse_degrees("3..6")
    [3, 4, 5, 6]
    """

    low, sep, high = text.partition("..")
    try:
        degrees = list(range(int(low), int(high) + 1)) if sep else [int(low)]
    except ValueError:
        raise ValueError(f"degrees must look like 'a..b' or 'n', got {text!r}")

    if not degrees:
        raise ValueError(f"empty degree range {text!r}")

    return degrees


def lemma_sweep(samples, degrees=range(3, 13), seed=None, tol=None, nb_cpu=1, retries=None, green=0.5):
    """Sample closed links and check the local lemmas on each.

    Samples are spread evenly over the degrees. Every degree draws from its
    own generator, spawned from one seed sequence, so the result only depends
    on the seed and never on nb_cpu.

    Parameters
    ----------
    samples : int
        Total number of links, at least 1.

    degrees : iterable of int, default range(3, 13)
        Link sizes, each at least 3.

    seed : int, default None

    tol : float, default None

    nb_cpu : int, default 1
        How many cpus to use. Can at most use 1 per degree. Will only lead to
        speedups on large sweeps. Requires ray when above 1.

    retries : int, default None
        Sampling attempts per link; 1000 by default.

    green : float, default 0.5
        Probability of a rectilinear turn while sampling. With 0 every turn
        is uniform and the red count only depends on the degree.

    Returns
    -------
    DataFrame with columns Degree, Sample, RedCount, Status, Lemma, Antipodal
    and Plus. RedCount is -1 for samples where no simple link was found.

    Examples
    --------
    >>> df = lemma_sweep(20, degrees=[4, 5], seed=0)
    >>> len(df), sorted(df.Degree.unique().tolist())
    (20, [4, 5])
    >>> int((df.Status == "LemmaViolation").sum())
    0
    """

    degrees = list(degrees)
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    if not degrees or min(degrees) < 3:
        raise ValueError(f"degrees must all be at least 3, got {degrees}")
    if not 0 <= green <= 1:
        raise ValueError(f"green must be a probability, got {green}")

    kwargs = fill_kwargs({"tol": tol, "retries": retries})
    seeds = np.random.SeedSequence(seed).spawn(len(degrees))

    chunks = [
        {"degree": degree, "samples": n, "seed": s, "tol": kwargs["tol"], "retries": kwargs["retries"], "green": green}
        for degree, n, s in zip(degrees, _samples_per_degree(samples, degrees), seeds)
        if n
    ]

    logger.debug("lemma sweep: %d samples over degrees %s", samples, degrees)
    return chunk_apply(_sweep_chunk, chunks, nb_cpu=nb_cpu)


def red_count_histogram(df):
    """Table of sample counts with one row per degree and one column per red count."""

    return pd.crosstab(df.Degree, df.RedCount)


def sweep_violations(df):
    return df[df.Status == "LemmaViolation"]
