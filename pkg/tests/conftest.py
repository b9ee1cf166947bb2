from __future__ import annotations

from fractions import Fraction

import pytest

from formalpde import jetspace as js
from formalpde.parser import parse
from formalpde.pdesystem import LinearSystem


def make_system(n: int, *equations, m: int = 1) -> LinearSystem:
    """Build a system from ("digits", coeff) term lists; "" is the order-0 jet."""
    built = []
    for terms in equations:
        d: dict = {}
        for item in terms:
            if len(item) == 2:
                digs, c = item
                k = 1
            else:
                k, digs, c = item
            ds = [int(x) for x in str(digs)] if str(digs) else []
            mu = js.mu_from_digits(ds, n)
            key = (k, mu)
            d[key] = d.get(key, Fraction(0)) + Fraction(c)
        built.append(d)
    return LinearSystem(n, m, built)


CORPUS_TEXTS = {
    "example1": (
        "vars=2; eq: y[2,2,2]=0; eq: y[1,2,2]=0; eq: y[1,1,2]=0; "
        "eq: y[1,1,1]=0; eq: y[2,2]=0; eq: y[1,2]=0"
    ),
    "example2": "vars=3; eq: y[3,3]=0; eq: y[2,3]=0; eq: y[1,3]=0; eq: y[1,2]=0",
    "example3": "vars=3; eq: y[1,1]=0; eq: y[1,3]-y[2]=0",
    "example4": "vars=3; eq: y[3,3]=0; eq: y[2,3]-y[1,3]=0; eq: y[2,2]-y[1,2]=0",
    "example5_r": (
        "vars=3; eq: y[3,3]-y[1,1]=0; eq: y[2,3]=0; eq: y[2,2]-y[1,1]=0; "
        "eq: y[1,3]=0; eq: y[1,2]=0"
    ),
    "example5_rprime": "vars=3; eq: y[3,3]-y[1,1]=0; eq: y[2,3]=0; eq: y[2,2]-y[1,1]=0",
    "example5_rsecond": "vars=3; eq: y[3,3]-y[1,1]=0; eq: y[2,3,3]=0; eq: y[2,2]-y[1,1]=0",
    "example6_twisted": "vars=3; eq: y[3,3,3]-y[1]=0; eq: y[3,3]-y[2]=0",
    "example6_third": "vars=3; eq: y[3,3,3]-y[1,1]=0; eq: y[2,2]-y[1,3]=0",
    "example7": "vars=4; eq: y[4,4]=0; eq: y[3,4]-y[2,2]=0; eq: y[3,3]=0; eq: y[2,4]-y[1,1]=0",
    "example7_primed": (
        "vars=4; eq: y[4,4]=0; eq: y[3,4]-y[2,2]-y[1]=0; eq: y[3,3]=0; "
        "eq: y[2,4]-y[1,1]-y[3]=0"
    ),
    "example8": "vars=3; eq: y[1,3]=0; eq: y[2,3]=0",
    "abstract_n1": "vars=1; eq: y[1,1]=0",
    "abstract_n2_q": "vars=2; eq: y[2,2]=0; eq: y[1,2]-y[1,1]=0",
    "abstract_n2_qprime": "vars=2; eq: y[2,2,2]=0; eq: y[1,2]-y[1,1]=0",
    "abstract_n3": "vars=3; eq: y[3,3]=0; eq: y[2,3]-y[1,1]=0; eq: y[2,2]=0",
}


@pytest.fixture(scope="session")
def corpus_systems():
    return {name: parse(text).system for name, text in CORPUS_TEXTS.items()}


def digits_of(jc) -> tuple:
    return js.digits(jc.mu)
