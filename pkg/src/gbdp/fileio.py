"""Strict, versioned JSON file formats plus CSV/triplet writers.

Model files:

    {"format_version": 1,
     "shape": {"q": 2, "dims": [2, 2], "l1": 2, "l2": 2},
     "self": null | 0.1 | {"0,0": 0.1, ...},
     "edges": [{"from": [0, 0], "to": [1, 0], "prob": 0.25}, ...],
     "absorbing": false}

Parametrization files:

    {"format_version": 1,
     "shape": {...},
     "alpha": {"0,0": 1.0, ...},
     "gamma": {"1,0,1": 0.3, ...}}

alpha keys are comma-joined state coordinates; gamma keys are
"direction,offset,step".  Parsing is strict: unknown keys are rejected,
format_version must equal 1, every edge must be a legal grid jump with
probability in (0, 1].  "self" and "absorbing" may be omitted.
"""

import csv
import json

from .errors import FormatError
from .lattice import GridShape, edge_between, in_grid
from .model import TransitionModel
from .param import Parametrization

FORMAT_VERSION = 1


def _check_keys(obj, required, optional, what):
    if not isinstance(obj, dict):
        raise FormatError("%s must be an object, got %s" % (what, type(obj).__name__))
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise FormatError("%s has unknown keys: %s" % (what, sorted(unknown)))
    missing = set(required) - set(obj)
    if missing:
        raise FormatError("%s is missing keys: %s" % (what, sorted(missing)))


def _check_version(doc, what):
    if doc.get("format_version") != FORMAT_VERSION:
        raise FormatError(
            "%s format_version must be %d (got %r)"
            % (what, FORMAT_VERSION, doc.get("format_version"))
        )


def _load_json(path, what):
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise FormatError("%s is not valid JSON: %s" % (what, exc))


def _parse_shape(obj):
    _check_keys(obj, ("q", "dims", "l1", "l2"), (), "shape")
    if not isinstance(obj["dims"], list) or not all(
        isinstance(n, int) for n in obj["dims"]
    ):
        raise FormatError("shape dims must be a list of integers")
    if obj["q"] != len(obj["dims"]):
        raise FormatError(
            "shape q=%r does not match len(dims)=%d" % (obj["q"], len(obj["dims"]))
        )
    if not isinstance(obj["l1"], int) or not isinstance(obj["l2"], int):
        raise FormatError("shape l1 and l2 must be integers")
    return GridShape(tuple(obj["dims"]), obj["l1"], obj["l2"])


def _parse_state_key(key, q, what):
    parts = key.split(",")
    try:
        u = tuple(int(s) for s in parts)
    except ValueError:
        raise FormatError("%s key %r is not a comma-joined state" % (what, key))
    if len(u) != q:
        raise FormatError("%s key %r has %d coordinates, expected %d"
                          % (what, key, len(u), q))
    return u


def _state_key(u):
    return ",".join(str(c) for c in u)


def load_model(path):
    doc = _load_json(path, "model file")
    _check_keys(doc, ("format_version", "shape", "edges"),
                ("self", "absorbing"), "model file")
    _check_version(doc, "model file")
    shape = _parse_shape(doc["shape"])
    if not isinstance(doc["edges"], list):
        raise FormatError("model edges must be a list")
    probs = {}
    for entry in doc["edges"]:
        _check_keys(entry, ("from", "to", "prob"), (), "edge")
        u, v = tuple(entry["from"]), tuple(entry["to"])
        if edge_between(shape, u, v) is None:
            raise FormatError(
                "edge %s->%s exits the grid or is not a legal jump" % (u, v)
            )
        p = float(entry["prob"])
        if not 0.0 < p <= 1.0:
            raise FormatError(
                "edge %s->%s probability %r outside (0, 1]" % (u, v, entry["prob"])
            )
        if (u, v) in probs:
            raise FormatError("duplicate edge %s->%s" % (u, v))
        probs[(u, v)] = p
    self_prob = doc.get("self")
    if isinstance(self_prob, dict):
        parsed = {}
        for key, d in self_prob.items():
            u = _parse_state_key(key, shape.q, "self table")
            if not in_grid(shape, u):
                raise FormatError("self table state %s is off the grid" % (u,))
            parsed[u] = float(d)
        self_prob = parsed
    elif self_prob is not None:
        self_prob = float(self_prob)
    absorbing = doc.get("absorbing", False)
    if not isinstance(absorbing, bool):
        raise FormatError("absorbing must be a boolean, got %r" % (absorbing,))
    return TransitionModel(shape, probs, self_prob, absorbing)


def _shape_doc(shape):
    return {"q": shape.q, "dims": list(shape.dims),
            "l1": shape.l1, "l2": shape.l2}


def save_model(model, path):
    edges = [
        {"from": list(u), "to": list(v), "prob": p}
        for (u, v), p in sorted(model.probs.items())
    ]
    self_prob = model.self_prob
    if isinstance(self_prob, dict):
        self_prob = {_state_key(u): d for u, d in sorted(self_prob.items())}
    doc = {
        "format_version": FORMAT_VERSION,
        "shape": _shape_doc(model.shape),
        "self": self_prob,
        "edges": edges,
        "absorbing": model.absorbing,
    }
    with open(path, "w") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")


def load_params(path):
    doc = _load_json(path, "parametrization file")
    _check_keys(doc, ("format_version", "shape", "alpha", "gamma"), (),
                "parametrization file")
    _check_version(doc, "parametrization file")
    shape = _parse_shape(doc["shape"])
    if not isinstance(doc["alpha"], dict) or not isinstance(doc["gamma"], dict):
        raise FormatError("alpha and gamma must be objects")
    alpha = {
        _parse_state_key(key, shape.q, "alpha"): float(a)
        for key, a in doc["alpha"].items()
    }
    gamma = {}
    for key, g in doc["gamma"].items():
        parts = key.split(",")
        try:
            i, r, x = (int(s) for s in parts)
        except ValueError:
            raise FormatError(
                "gamma key %r is not 'direction,offset,step'" % (key,)
            )
        gamma[(i, r, x)] = float(g)
    return Parametrization(shape, alpha, gamma)


def save_params(p, path):
    doc = {
        "format_version": FORMAT_VERSION,
        "shape": _shape_doc(p.shape),
        "alpha": {_state_key(u): a for u, a in sorted(p.alpha.items())},
        "gamma": {
            "%d,%d,%d" % c: g for c, g in sorted(p.gamma.items())
        },
    }
    with open(path, "w") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")


def state_label(u):
    return "(" + ",".join(str(c) for c in u) + ")"


def write_matrix_csv(f, labels, matrix):
    """CSV with a header row of state labels and a label column; entries
    carry 17 significant digits."""
    writer = csv.writer(f)
    writer.writerow(["state"] + [state_label(u) for u in labels])
    for u, row in zip(labels, matrix):
        writer.writerow([state_label(u)] + ["%.17g" % x for x in row])


def write_frequency_csv(f, freqs, trials):
    """CSV of (state, count, frequency), states in label order, sink last."""
    writer = csv.writer(f)
    writer.writerow(["state", "count", "frequency"])
    keyed = sorted(
        (state for state in freqs if state is not None)
    ) + ([None] if None in freqs else [])
    for state in keyed:
        label = "sink" if state is None else state_label(state)
        writer.writerow(
            [label, round(freqs[state] * trials), "%.17g" % freqs[state]]
        )


def dump_int_matrix(m, prefix):
    """Sparse triplet dump `row col value` plus legend sidecars.

    Writes prefix.txt, prefix.rows.txt and prefix.cols.txt; returns the
    three paths.
    """
    triplet_path = prefix + ".txt"
    rows_path = prefix + ".rows.txt"
    cols_path = prefix + ".cols.txt"
    with open(triplet_path, "w") as f:
        nz = m.entries.nonzero()
        for r, c in zip(*nz):
            f.write("%d %d %d\n" % (r, c, m.entries[r, c]))
    with open(rows_path, "w") as f:
        for label in m.row_labels:
            f.write("%s\n" % (label,))
    with open(cols_path, "w") as f:
        for label in m.col_labels:
            f.write("%s\n" % (label,))
    return triplet_path, rows_path, cols_path
