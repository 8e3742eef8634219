"""Inequality systems ``A x <= b`` over named variables."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import NameCollision, UnknownNode
from .rational import format_rational, parse_rational

ZERO = Fraction(0)


@dataclass(frozen=True)
class HPolytope:
    """The polytope ``{x : coeffs . x <= rhs for every row}``.

    ``rows`` holds ``(coeffs, rhs)`` pairs where ``coeffs`` is a tuple aligned
    with ``vars``.  Instances are immutable; every transformation returns a
    new polytope.
    """

    vars: tuple
    rows: tuple

    def __post_init__(self):
        vars_ = tuple(str(v) for v in self.vars)
        if len(set(vars_)) != len(vars_):
            raise NameCollision(f"duplicate variable names in {vars_}")
        n = len(vars_)
        rows = []
        for coeffs, rhs in self.rows:
            coeffs = tuple(Fraction(c) for c in coeffs)
            if len(coeffs) != n:
                raise ValueError(f"row has {len(coeffs)} coefficients, expected {n}")
            rows.append((coeffs, Fraction(rhs)))
        object.__setattr__(self, "vars", vars_)
        object.__setattr__(self, "rows", tuple(rows))

    @classmethod
    def from_dicts(cls, vars, rows):
        """Build from rows given as ``(mapping var -> coeff, rhs)``."""
        vars = tuple(vars)
        index = {v: i for i, v in enumerate(vars)}
        out = []
        for coeffs, rhs in rows:
            vec = [ZERO] * len(vars)
            for name, c in coeffs.items():
                if name not in index:
                    raise UnknownNode(name)
                vec[index[name]] += Fraction(c)
            out.append((tuple(vec), Fraction(rhs)))
        return cls(vars, tuple(out))

    @classmethod
    def box(cls, vars, lower=0, upper=1):
        vars = tuple(vars)
        rows = []
        for i in range(len(vars)):
            e = [ZERO] * len(vars)
            e[i] = Fraction(-1)
            rows.append((tuple(e), -Fraction(lower)))
            e = [ZERO] * len(vars)
            e[i] = Fraction(1)
            rows.append((tuple(e), Fraction(upper)))
        return cls(vars, tuple(rows))

    @property
    def dim_ambient(self):
        return len(self.vars)

    def index(self, var):
        try:
            return self.vars.index(var)
        except ValueError:
            raise UnknownNode(var) from None

    def vector(self, values):
        """Coerce a mapping or sequence to a coefficient tuple aligned with ``vars``."""
        if isinstance(values, Mapping):
            unknown = set(values) - set(self.vars)
            if unknown:
                raise UnknownNode(sorted(unknown)[0])
            return tuple(Fraction(values.get(v, 0)) for v in self.vars)
        values = tuple(Fraction(v) for v in values)
        if len(values) != len(self.vars):
            raise ValueError(f"expected {len(self.vars)} values, got {len(values)}")
        return values

    def point(self, values):
        return dict(zip(self.vars, self.vector(values)))

    def with_rows(self, extra):
        return HPolytope(self.vars, self.rows + tuple(extra))

    def with_equation(self, coeffs, rhs):
        coeffs = self.vector(coeffs)
        rhs = Fraction(rhs)
        return self.with_rows([(coeffs, rhs), (tuple(-c for c in coeffs), -rhs)])

    def renamed(self, mapping):
        return HPolytope(tuple(mapping.get(v, v) for v in self.vars), self.rows)

    def violated_rows(self, point):
        x = self.vector(point)
        return [i for i, (a, b) in enumerate(self.rows)
                if sum(ai * xi for ai, xi in zip(a, x)) > b]

    def contains(self, point):
        return not self.violated_rows(point)

    def row_dict(self, i):
        coeffs, rhs = self.rows[i]
        return {v: c for v, c in zip(self.vars, coeffs) if c}, rhs

    def to_json(self):
        return {
            "vars": list(self.vars),
            "rows": [
                {"coeffs": {v: format_rational(c) for v, c in zip(self.vars, a) if c},
                 "rhs": format_rational(b)}
                for a, b in self.rows
            ],
        }

    @classmethod
    def from_json(cls, data):
        if set(data) != {"vars", "rows"}:
            raise ValueError(f"unexpected HPolytope keys: {sorted(data)}")
        rows = []
        for row in data["rows"]:
            if set(row) != {"coeffs", "rhs"}:
                raise ValueError(f"unexpected row keys: {sorted(row)}")
            rows.append(({k: parse_rational(v) for k, v in row["coeffs"].items()},
                         parse_rational(row["rhs"])))
        return cls.from_dicts(data["vars"], rows)


def dot(a: Sequence, x: Sequence):
    return sum((ai * xi for ai, xi in zip(a, x) if ai), ZERO)
