"""JSON matrix documents.

One document holds one matrix::

    {"kind": "cm", "modes": 2, "bipartition": [1, 1], "data": [[...], ...]}

``kind`` is ``cm``, ``channel`` or ``symplectic``; ``data`` is row-major
and ``2 * modes`` square. Channel documents also carry ``n_modes`` (size of
the system the channel acts on), ``active`` and ``n_out``; their ``modes``
counts outputs plus inputs of the active part. Floats are written with
Python's shortest round-trip repr, so write-then-read is bit-exact.
"""

import json
import sys
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument
from .glocc import GaussianChannel
from .symplectic import TOL_CM, is_valid_cm

KINDS = ("cm", "channel", "symplectic")


@dataclass
class MatrixDocument:
    kind: str
    modes: int
    data: np.ndarray
    bipartition: tuple = None
    n_modes: int = None
    active: tuple = None
    n_out: int = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidArgument(f"unknown document kind {self.kind!r}; expected one of {KINDS}")
        if isinstance(self.modes, bool) or not isinstance(self.modes, (int, np.integer)) or self.modes < 0:
            raise InvalidArgument(f"'modes' must be a nonnegative integer, got {self.modes!r}")
        self.modes = int(self.modes)
        try:
            data = np.asarray(self.data, dtype=float)
        except (TypeError, ValueError) as exc:
            raise InvalidArgument(f"'data' is not a numeric matrix: {exc}") from None
        if self.modes == 0 and data.size == 0:
            data = np.zeros((0, 0))
        if data.shape != (2 * self.modes, 2 * self.modes):
            raise InvalidArgument(
                f"'data' has shape {data.shape}, expected {2 * self.modes}x{2 * self.modes} for {self.modes} modes"
            )
        if not np.all(np.isfinite(data)):
            raise InvalidArgument("'data' has non-finite entries")
        self.data = data
        if self.bipartition is not None:
            bp = tuple(self.bipartition)
            if len(bp) != 2 or any(not isinstance(k, int) or k < 0 for k in bp) or sum(bp) != self.modes:
                raise InvalidArgument(f"bipartition {self.bipartition!r} does not split {self.modes} modes")
            self.bipartition = bp

    def to_dict(self):
        out = {"kind": self.kind, "modes": self.modes}
        if self.bipartition is not None:
            out["bipartition"] = list(self.bipartition)
        if self.kind == "channel":
            out["n_modes"] = self.n_modes
            out["active"] = list(self.active)
            out["n_out"] = self.n_out
        out["data"] = self.data.tolist()
        return out

    def dumps(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent, allow_nan=False)

    @classmethod
    def from_dict(cls, obj):
        if not isinstance(obj, dict):
            raise InvalidArgument("matrix document must be a JSON object")
        missing = [k for k in ("kind", "modes", "data") if k not in obj]
        if missing:
            raise InvalidArgument(f"matrix document lacks field(s) {missing}")
        extra = {}
        if obj["kind"] == "channel":
            for key in ("n_modes", "active", "n_out"):
                if key not in obj:
                    raise InvalidArgument(f"channel document lacks field {key!r}")
            extra = {"n_modes": obj["n_modes"], "active": tuple(obj["active"]), "n_out": obj["n_out"]}
        return cls(
            kind=obj["kind"],
            modes=obj["modes"],
            data=obj["data"],
            bipartition=obj.get("bipartition"),
            **extra,
        )

    @classmethod
    def loads(cls, text):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidArgument(f"not valid JSON: {exc}") from None
        return cls.from_dict(obj)

    @classmethod
    def from_cm(cls, gamma, bipartition=None):
        gamma = np.asarray(gamma, dtype=float)
        return cls("cm", gamma.shape[0] // 2, gamma, bipartition)

    @classmethod
    def from_channel(cls, channel):
        return cls(
            "channel",
            channel.n_in + channel.n_out,
            channel.gamma,
            n_modes=channel.n_modes,
            active=tuple(channel.active),
            n_out=channel.n_out,
        )

    def to_channel(self):
        if self.kind != "channel":
            raise InvalidArgument(f"expected a channel document, got kind {self.kind!r}")
        return GaussianChannel(
            gamma=self.data, n_modes=int(self.n_modes), active=tuple(self.active), n_out=int(self.n_out)
        )


def read_document(path, *, validate=True, tol=TOL_CM):
    """Load a document from ``path`` (``"-"`` reads standard input).

    CM documents must satisfy ``gamma + i sigma >= 0`` unless ``validate``
    is false.
    """
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InvalidArgument(f"cannot read {path}: {exc.strerror}") from None
    doc = MatrixDocument.loads(text)
    if validate and doc.kind == "cm":
        if doc.modes == 0:
            raise InvalidArgument("covariance matrix is empty")
        if not is_valid_cm(doc.data, tol):
            raise InvalidArgument(f"{path}: matrix violates gamma + i sigma >= 0")
    return doc


def write_document(doc, path, indent=None):
    text = doc.dumps(indent) + "\n"
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
