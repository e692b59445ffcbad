import json

import numpy as np
import pytest

from cartanmetric.metric_space import euclidean_spec, evaluate_point, load_manifold_spec

FAMILY_IDS = ("riemannian", "randers", "kropina", "iseries1", "iseries2")


@pytest.fixture
def euclid2():
    return euclidean_spec([1.0, 1.0])


@pytest.fixture
def worked_point(euclid2):
    """Case I worked example: identity cometric, b=(1,1), y=(0.6,0.8)."""
    from cartanmetric.metric_space import Momentum

    return evaluate_point(euclid2, np.zeros(2)), Momentum(np.array([0.6, 0.8]))


@pytest.fixture
def spec_file(tmp_path):
    def write(doc, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return path

    return write


EUCLID2_DOC = {
    "dim": 2,
    "cometric": {"kind": "constant", "matrix": [[1, 0], [0, 1]]},
    "oneform": {"kind": "constant", "b": [1, 1]},
}

SWEEP_DOC = {
    "dim": 2,
    "cometric": {"kind": "constant", "matrix": [[1, 0], [0, 1]]},
    "oneform": {"kind": "constant", "b": [2, 2]},
}


def sweep_spec(n):
    return load_manifold_spec(json.dumps({
        "dim": n,
        "cometric": {"kind": "constant", "matrix": np.eye(n).tolist()},
        "oneform": {"kind": "constant", "b": [2.0] * n},
    }))
