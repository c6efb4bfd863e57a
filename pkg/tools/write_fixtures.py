"""Regenerate the fixture JSON files under src/heller/data from the
hand-transcribed tables below."""

import json
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "heller" / "data"


def pair(e, f, a):
    return {"e_part": e, "f_part": f, "a": a}


def eps(target, e_map, f_map):
    return {"target": target, "e_map": e_map, "f_map": f_map}


ZERO = pair([], [], [])


def sums(*labels):
    out = {}
    for lab in labels:
        out[lab] = out.get(lab, 0) + 1
    return out


A_S = {
    "X1": ["X2"], "X2": ["X1"], "X3": ["X2"], "X4": ["X1"], "X5": ["X19"],
    "X6": ["X7"], "X7": ["X6"], "X8": ["X1"], "X9": ["X19"], "X10": [],
    "X11": ["X22"], "X12": ["X19"], "X13": ["X6"], "X14": ["X5"], "X15": [],
    "X16": ["X2", "X19"], "X17": ["X1", "X5"], "X18": ["X6"], "X19": ["X5"],
    "X20": ["X2"], "X21": [], "X22": ["X11"], "X23": ["X7"], "X24": ["X5"],
    "X25": ["X7"],
}
A_OMEGA_S = {
    "X1": ["X1"], "X2": ["X2"], "X3": ["X1"], "X4": ["X2"], "X5": ["X5"],
    "X6": ["X6"], "X7": ["X7"], "X8": ["X2"], "X9": ["X5"], "X10": [],
    "X11": ["X11"], "X12": ["X5"], "X13": ["X7"], "X14": ["X19"], "X15": [],
    "X16": ["X1", "X5"], "X17": ["X2", "X19"], "X18": ["X7"], "X19": ["X19"],
    "X20": ["X1"], "X21": [], "X22": ["X22"], "X23": ["X6"], "X24": ["X19"],
    "X25": ["X6"],
}
ONE = [["1"]]
A_EPS = {
    "X1": eps(pair([1], [1], ONE), ONE, ONE),
    "X2": eps(pair([2], [2], ONE), ONE, ONE),
    "X3": eps(pair([1], [1], ONE), ONE, ONE),
    "X4": eps(pair([2], [2], ONE), ONE, ONE),
    "X5": eps(pair([2], [3], [["pi"]]), ONE, ONE),
    "X6": eps(pair([1], [2], [["pi"]]), ONE, ONE),
    "X7": eps(pair([2], [1, 3], [["1", "pi"]]), ONE, [["1", "0"], ["0", "1"]]),
    "X8": eps(pair([2], [2], ONE), [["pi"], ["1"]], ONE),
    "X9": eps(pair([2], [3], [["pi"]]), ONE, ONE),
    "X10": eps(ZERO, [[]], []),
    "X11": eps(pair([], [2], []), [], ONE),
    "X12": eps(pair([2], [3], [["pi"]]), [["pi"], ["1"]], ONE),
    "X13": eps(pair([2], [1, 3], [["1", "pi"]]), ONE, [["1", "0"], ["0", "1"]]),
    "X14": eps(pair([1], [3], [["pi^2"]]), ONE, ONE),
    "X15": eps(ZERO, [[]], []),
    "X16": eps(pair([1, 2], [1, 3], [["1", "0"], ["0", "pi"]]),
               [["1", "1"], ["1", "0"]], [["1", "0"], ["0", "1"]]),
    "X17": eps(pair([2, 1], [2, 3], [["1", "0"], ["0", "pi^2"]]),
               [["pi", "1"], ["1", "0"]], [["1", "0"], ["0", "1"]]),
    "X18": eps(pair([2], [1, 3], [["1", "pi"]]), [["pi"], ["1"]], [["1", "0"], ["0", "1"]]),
    "X19": eps(pair([1], [3], [["pi^2"]]), ONE, ONE),
    "X20": eps(pair([1], [1], ONE), ONE, ONE),
    "X21": eps(ZERO, [[]], []),
    "X22": eps(pair([], [1], []), [], ONE),
    "X23": eps(pair([1], [2], [["pi"]]), ONE, ONE),
    "X24": eps(pair([1], [3], [["pi^2"]]), ONE, ONE),
    "X25": eps(pair([1], [2], [["pi"]]), ONE, ONE),
}

B_S = {
    "X1": ["X2"], "X2": ["X1"], "X3": ["X1"], "X5": ["X17"], "X6": ["X2", "X13"],
    "X7": ["X1", "X9"], "X8": ["X1", "X2"], "X9": ["X17"], "X10": ["X2"],
    "X11": ["X9"], "X12": ["X2", "X17"], "X13": ["X1", "X9"], "X14": ["X2", "X9"],
    "X15": ["X2"], "X16": ["X1", "X17"], "X17": ["X1", "X2", "X9"],
    "X18": ["X1", "X2", "X9"], "X19": ["X2", "X9"], "X20": ["X1"], "X21": ["X2"],
    "X22": ["X13"], "X23": ["X17"], "X24": ["X2", "X9"], "X25": ["X17"],
}
B_OMEGA_S = {
    "X1": ["X21"], "X2": ["X3"], "X3": ["X3"], "X5": ["X25"], "X6": ["X21", "X22"],
    "X7": ["X3", "X11"], "X8": ["X21", "X3"], "X9": ["X25"], "X10": ["X21"],
    "X11": ["X11"], "X12": ["X21", "X25"], "X13": ["X3", "X11"],
    "X14": ["X21", "X11"], "X15": ["X21"], "X16": ["X3", "X25"],
    "X17": ["X21", "X3", "X11"], "X18": ["X21", "X3", "X11"], "X19": ["X21", "X11"],
    "X20": ["X3"], "X21": ["X21"], "X22": ["X22"], "X23": ["X25"],
    "X24": ["X21", "X11"], "X25": ["X25"],
}
SHEAR = [["1", "-pi"], ["0", "1"]]
I2 = [["1", "0"], ["0", "1"]]
B_EPS = {
    "X1": eps(pair([1], [], []), ONE, [[]]),
    "X2": eps(pair([2], [1], ONE), ONE, ONE),
    "X3": eps(pair([2], [1], ONE), ONE, ONE),
    "X5": eps(pair([2], [2], [["pi"]]), ONE, ONE),
    "X6": eps(pair([1], [1], [["0"]]), ONE, ONE),
    "X7": eps(pair([2], [1, 2], [["1", "0"]]), ONE, SHEAR),
    "X8": eps(pair([1, 2], [1], [["0"], ["1"]]), I2, ONE),
    "X9": eps(pair([2], [2], [["pi"]]), ONE, ONE),
    "X10": eps(pair([1], [], []), ONE, [[]]),
    "X11": eps(pair([], [2], []), [], ONE),
    "X12": eps(pair([1, 2], [2], [["0"], ["pi"]]), I2, ONE),
    "X13": eps(pair([2], [1, 2], [["1", "0"]]), ONE, SHEAR),
    "X14": eps(pair([1], [2], [["0"]]), ONE, ONE),
    "X15": eps(pair([1], [], []), ONE, [[]]),
    "X16": eps(pair([2, 2], [1, 2], [["1", "0"], ["0", "pi"]]), [["1", "1"], ["1", "0"]], I2),
    "X17": eps(pair([1, 2], [1, 2], [["0", "0"], ["1", "0"]]), I2, I2),
    "X18": eps(pair([1, 2], [1, 2], [["0", "0"], ["1", "0"]]), I2, SHEAR),
    "X19": eps(pair([1], [2], [["0"]]), ONE, ONE),
    "X20": eps(pair([2], [1], ONE), ONE, ONE),
    "X21": eps(pair([1], [], []), ONE, [[]]),
    "X22": eps(pair([], [1], []), [], ONE),
    "X23": eps(pair([2], [2], [["pi"]]), ONE, ONE),
    "X24": eps(pair([1], [2], [["0"]]), ONE, ONE),
    "X25": eps(pair([2], [2], [["pi"]]), ONE, ONE),
}

C3 = {
    "labels": ["X1", "X3", "X6", "X10", "X21", "X22", "X25"],
    "aliases": {"Y1": "X1", "Y2": "X3", "Y3": "X6", "Y4": "X10", "Y5": "X21", "Y6": "X22", "Y7": "X25"},
    "prime": 3,
    "H": [
        [1, 0, 1, 0, 1, 0, 0],
        [1, 1, 1, 1, 1, 0, 1],
        [0, 1, 1, 0, 1, 1, 0],
        [0, 1, 0, 2, 1, 0, 1],
        [0, 1, 0, 1, 1, 0, 1],
        [1, 1, 0, 0, 0, 1, 0],
        [0, 1, 1, 1, 1, 1, 1],
    ],
    "H_prime": [
        [1, 0, 1, 0, 1, 0, 0],
        [1, 1, 0, 0, 0, 1, 0],
        [0, 1, 1, 0, 1, 1, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 1, 1, 0],
        [1, 1, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0],
    ],
    "obstruction_column": 3,
}

C5 = {
    "omega_s": {"X10": ["X10", "X21"], "X21": ["X21"]},
    "idempotent_fails": ["X10"],
}


def table(d):
    return {k: sums(*v) for k, v in d.items()}


def main():
    files = {
        "fixtures_A.json": {"schema": "heller.fixtures/1", "algebra": "A",
                            "S": table(A_S), "omega_S": table(A_OMEGA_S), "epsilon": A_EPS},
        "fixtures_B.json": {"schema": "heller.fixtures/1", "algebra": "B",
                            "S": table(B_S), "omega_S": table(B_OMEGA_S), "epsilon": B_EPS},
        "fixtures_C3.json": {"schema": "heller.fixtures/1", "algebra": "C3", **C3},
        "fixtures_C5.json": {"schema": "heller.fixtures/1", "algebra": "C5", **{
            "omega_S": table(C5["omega_s"]), "idempotent_fails": C5["idempotent_fails"]}},
    }
    for name, payload in files.items():
        (DATA / name).write_text(json.dumps(payload, indent=1) + "\n")
        print("wrote", name)


if __name__ == "__main__":
    main()
