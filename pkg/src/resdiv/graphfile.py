"""Plain-text graph files: parsing and bit-exact serialization.

Format (one statement per line, ``#`` starts a comment):

    curve <name> genus=<int> self=<negint>
    meet <name> <name> <posint>
    strict <name> meets <curve>=<posint> [<curve>=<posint> ...]
    divisor <name> <curve>=<rational> [<curve>=<rational> ...]

Rationals are written ``p`` or ``p/q``; decimals are rejected.  Parsing a
serialized model reproduces it exactly (up to whitespace normalization).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .divisor import Divisor
from .model import MalformedGraph, ResolutionModel, build_model
from .rationals import format_rational, parse_rational


class GraphSyntaxError(MalformedGraph):
    """A graph file line could not be parsed; carries the line number."""

    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__("line %d: %s" % (lineno, message))


@dataclass
class GraphDoc:
    model: ResolutionModel
    divisors: dict = field(default_factory=dict)  # name -> Divisor


def _parse_int(text, lineno, what):
    try:
        return int(text)
    except ValueError:
        raise GraphSyntaxError(lineno, "%s must be an integer, got %r"
                               % (what, text)) from None


def _parse_assignment(token, lineno):
    if "=" not in token:
        raise GraphSyntaxError(lineno, "expected <name>=<value>, got %r" % (token,))
    name, _, value = token.partition("=")
    return name, value


def parse_graph(text: str) -> GraphDoc:
    """Parse a graph description; raises GraphSyntaxError / MalformedGraph
    with line-numbered diagnostics."""
    curves = []
    meetings = []
    meeting_lines = {}
    strict = []
    divisor_lines = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "curve":
            if len(tokens) != 4:
                raise GraphSyntaxError(lineno, "curve takes a name, genus= and self=")
            name = tokens[1]
            fields = dict(_parse_assignment(t, lineno) for t in tokens[2:])
            if set(fields) != {"genus", "self"}:
                raise GraphSyntaxError(lineno, "curve needs genus= and self=")
            genus = _parse_int(fields["genus"], lineno, "genus")
            self_int = _parse_int(fields["self"], lineno, "self-intersection")
            if genus < 0:
                raise GraphSyntaxError(lineno, "genus must be non-negative")
            if self_int >= 0:
                raise GraphSyntaxError(lineno,
                                       "self-intersection must be negative, got %d" % self_int)
            curves.append((name, genus, self_int))
        elif kind == "meet":
            if len(tokens) != 4:
                raise GraphSyntaxError(lineno, "meet takes two curve names and a multiplicity")
            mult = _parse_int(tokens[3], lineno, "multiplicity")
            if mult <= 0:
                raise GraphSyntaxError(lineno, "meeting multiplicity must be positive")
            meetings.append((tokens[1], tokens[2], mult))
            meeting_lines[(tokens[1], tokens[2])] = lineno
        elif kind == "strict":
            if len(tokens) < 3 or tokens[2] != "meets":
                raise GraphSyntaxError(lineno,
                                       "strict takes a name, 'meets', and curve=mult pairs")
            incidences = {}
            for token in tokens[3:]:
                curve, value = _parse_assignment(token, lineno)
                incidences[curve] = _parse_int(value, lineno, "incidence")
            strict.append((tokens[1], incidences))
        elif kind == "divisor":
            if len(tokens) < 2:
                raise GraphSyntaxError(lineno, "divisor takes a name and coefficient pairs")
            divisor_lines.append((lineno, tokens[1], tokens[2:]))
        else:
            raise GraphSyntaxError(lineno, "unknown statement %r" % (kind,))

    try:
        model = build_model(curves, meetings, strict)
    except MalformedGraph as exc:
        raise MalformedGraph(str(exc)) from None

    divisors = {}
    for lineno, name, tokens in divisor_lines:
        if name in divisors:
            raise GraphSyntaxError(lineno, "duplicate divisor %r" % (name,))
        exc_coeffs = {}
        strict_coeffs = {}
        if tokens == ["0"]:
            tokens = []
        for token in tokens:
            label, value = _parse_assignment(token, lineno)
            try:
                coeff = parse_rational(value)
            except ValueError as err:
                raise GraphSyntaxError(lineno, str(err)) from None
            if label in model._index:
                exc_coeffs[label] = coeff
            elif label in model._strict_index:
                strict_coeffs[label] = coeff
            else:
                raise GraphSyntaxError(lineno, "unknown curve %r in divisor %r"
                                       % (label, name))
        divisors[name] = Divisor.from_coeffs(model, exc=exc_coeffs,
                                             strict=strict_coeffs)
    return GraphDoc(model=model, divisors=divisors)


def parse_graph_file(path) -> GraphDoc:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_graph(handle.read())


def format_divisor(d: Divisor) -> str:
    """Nonzero coefficients in model order, or "0"."""
    model = d.model
    parts = []
    for label, coeff in zip(model.labels, d.exc):
        if coeff:
            parts.append("%s=%s" % (label, format_rational(coeff)))
    for label, coeff in zip(model.strict_labels, d.strict):
        if coeff:
            parts.append("%s=%s" % (label, format_rational(coeff)))
    return " ".join(parts) if parts else "0"


def serialize_model(model: ResolutionModel, divisors=None) -> str:
    """Canonical text form; parse(serialize(model)) == model."""
    lines = []
    for c in model.curves:
        lines.append("curve %s genus=%d self=%d" % (c.label, c.genus, c.self_int))
    for i in range(model.u):
        for j in range(i + 1, model.u):
            if model.matrix[i][j]:
                lines.append("meet %s %s %d"
                             % (model.labels[i], model.labels[j], model.matrix[i][j]))
    for s in model.strict_curves:
        pairs = " ".join("%s=%d" % (model.labels[i], v)
                         for i, v in enumerate(s.incidence) if v)
        lines.append("strict %s meets %s" % (s.label, pairs) if pairs
                     else "strict %s meets" % (s.label,))
    for name, d in (divisors or {}).items():
        lines.append("divisor %s %s" % (name, format_divisor(d)))
    return "\n".join(lines) + "\n"
