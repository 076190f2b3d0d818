import json
import random

import pytest

from qmcurrents.corpus import random_instance
from qmcurrents.serialize import ProblemError, dumps, load_problem, parse_problem, problem_to_json


def _golden_dict():
    return {
        "dimension": 1,
        "section_exponents": [1],
        "holo_pole": [1],
        "anti_pole": [1],
        "numerator": [{"z": [0], "zbar": [0], "re": "1", "im": "0"}],
        "bump_exponents": [2],
        "tasks": ["laurent"],
    }


@pytest.mark.parametrize("seed", range(25))
def test_roundtrip(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, rng.randint(1, 3), 3, 3)
    data = problem_to_json(inst.omega, inst.section, ["verify-all"])
    problem = parse_problem(json.loads(dumps(data)))
    assert problem.omega.psi == inst.omega.psi
    assert problem.omega.phi == inst.omega.phi
    assert problem.omega.pole == inst.omega.pole
    assert problem.section == inst.section
    assert problem.tasks == ("verify-all",)
    assert problem_to_json(problem.omega, problem.section, problem.tasks) == data


def test_section_defaults_to_minimal():
    data = _golden_dict()
    del data["section_exponents"]
    problem = parse_problem(data)
    assert problem.section.I == (1,) and not problem.section_given


@pytest.mark.parametrize(
    "patch,field",
    [
        ({"holo_pole": [1, 0]}, "holo_pole"),
        ({"anti_pole": [-1]}, "anti_pole[0]"),
        ({"bump_exponents": [1]}, "bump_exponents"),
        ({"numerator": [{"z": [0], "zbar": [0, 1], "re": 1}]}, "numerator[0].zbar"),
        ({"numerator": [{"z": [0], "zbar": [0], "re": 0.5}]}, "numerator[0].re"),
        ({"numerator": [{"z": [0], "zbar": [0], "re": "1/0"}]}, "numerator[0].re"),
        ({"numerator": [{"z": [0], "w": [0]}]}, "numerator[0]"),
        ({"tasks": ["laurent", "nope"]}, "tasks[1]"),
        ({"section_exponents": [0]}, "section_exponents"),
        ({"dimension": 0}, "dimension"),
        ({"extra": 1}, "$"),
    ],
)
def test_validation_paths(patch, field):
    data = _golden_dict()
    data.update(patch)
    with pytest.raises(ProblemError) as err:
        parse_problem(data)
    assert err.value.field == field


def test_missing_field():
    data = _golden_dict()
    del data["numerator"]
    with pytest.raises(ProblemError) as err:
        parse_problem(data)
    assert err.value.field == "numerator"


def test_json_error_has_position():
    with pytest.raises(ProblemError, match="line 2, column 3"):
        load_problem('{"dimension": 1,\n  ]')


def test_dumps_is_stable():
    data = _golden_dict()
    assert dumps(data) == dumps(json.loads(dumps(data)))
