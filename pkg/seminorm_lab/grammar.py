"""
Textual grammar for functionals, maps, rules and sequences.

Functionals::

    l1 | linf | weighted:<rule> | rescaled:<rule>[:exclude=1,2]
    coord:<i> | sum(<f>,<f>) | max(<f>,<f>)
    pullback:<f>:<map> | quotient:<f>:basis=[<seq>,...]

Maps::

    id | identity | L | R | T | diag(<rule>) | table{1=e2,2=e1+e3}
    F(f=<map>) | compose(<outer>,<inner>) | add(<map>,<map>)

Rules::

    2^-i | 3^i | (2/3)^i | 1/n | n | <rational> | table{1=2,3=1/2;else=<rule>}

Sequences are signed sums of terms ``e3``, ``1/2*e1``, or ``0``. The ``i`` and
``n`` spellings of the index are interchangeable. Every ``format_*`` output
parses back to an equal object.
"""

from fractions import Fraction
from typing import Callable, List, Tuple, TypeVar

from .exceptions import InvalidSpecError, SpecParseError
from .linear_maps import (
    Compose,
    Diagonal,
    FiniteTable,
    Identity,
    LinearMapSpec,
    ShiftLeft,
    ShiftRight,
    SumMap,
    TruncateFirst,
    example4_inner,
    example4_map,
)
from .norms import (
    CoordinateAbs,
    FunctionalSpec,
    L1,
    LInf,
    Max,
    Pullback,
    Quotient,
    RescaledL1,
    Sum,
    WeightedL1,
)
from .rules import ConstantRule, IndexRule, PowerRule, ReciprocalRule, Rule, TableRule
from .seq_core import SparseSeq, basis_vector, format_rational, zero_seq

T = TypeVar("T")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, position: int = -1) -> SpecParseError:
        return SpecParseError(message, self.text, self.pos if position < 0 else position)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, token: str) -> bool:
        self.skip_ws()
        return self.text.startswith(token, self.pos)

    def accept(self, token: str) -> bool:
        if self.peek(token):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.accept(token):
            found = self.text[self.pos:self.pos + 1] or "end of input"
            raise self.error(f"Expected '{token}', found '{found}'")

    def end(self) -> None:
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error(f"Unexpected trailing input '{self.text[self.pos:]}'")

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("Expected an integer")
        return int(self.text[start:self.pos])

    def rational(self) -> Fraction:
        """Unsigned p or p/q."""
        start = self.pos
        numerator = self.integer()
        if self.peek("/") and self.pos + 1 < len(self.text) and self.text[self.pos + 1].isdigit():
            self.pos += 1
            denominator = self.integer()
            if denominator == 0:
                raise self.error("Zero denominator", start)
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def signed_rational(self) -> Fraction:
        sign = -1 if self.accept("-") else 1
        return sign * self.rational()

    def index(self) -> int:
        start = self.pos
        value = self.integer()
        if value < 1:
            raise self.error("Indices start at 1", start)
        return value

    def build(self, factory: Callable[[], T], start: int) -> T:
        try:
            return factory()
        except InvalidSpecError as e:
            raise self.error(str(e), start) from e

    # sequences

    def seq(self) -> SparseSeq:
        result = zero_seq()
        first = True
        while True:
            if self.accept("-"):
                sign = Fraction(-1)
            elif self.accept("+") or first:
                sign = Fraction(1)
            else:
                break
            if self.peek("e"):
                coefficient = Fraction(1)
            else:
                coefficient = self.rational()
                if not self.accept("*"):
                    if coefficient != 0:
                        raise self.error("Expected '*e<index>' after a coefficient")
                    first = False
                    continue
            self.expect("e")
            i = self.index()
            result = result + (sign * coefficient) * basis_vector(i)
            first = False
        return result

    def seq_list(self) -> Tuple[SparseSeq, ...]:
        self.expect("[")
        items: List[SparseSeq] = []
        if not self.accept("]"):
            items.append(self.seq())
            while self.accept(","):
                items.append(self.seq())
            self.expect("]")
        return tuple(items)

    # rules

    def rule(self) -> Rule:
        self.skip_ws()
        start = self.pos
        if self.accept("table{"):
            values: List[Tuple[int, Fraction]] = []
            default: Rule = ConstantRule(Fraction(0))
            if not self.peek(";") and not self.peek("}"):
                values.append(self._table_entry())
                while self.accept(","):
                    values.append(self._table_entry())
            if self.accept(";"):
                self.expect("else=")
                default = self.rule()
            self.expect("}")
            return self.build(lambda: TableRule(tuple(values), default), start)
        if self.accept("n") or self.accept("i"):
            return IndexRule()
        if self.accept("("):
            base = self.signed_rational()
            self.expect(")")
            self.expect("^")
            return self._power(base, start)
        value = self.signed_rational()
        if self.accept("^"):
            return self._power(value, start)
        if value == 1 and self.accept("/"):
            if self.accept("n") or self.accept("i"):
                return ReciprocalRule()
            raise self.error("Expected 'n' or 'i' after '1/'")
        return ConstantRule(value)

    def _table_entry(self) -> Tuple[int, Fraction]:
        i = self.index()
        self.expect("=")
        return i, self.signed_rational()

    def _power(self, base: Fraction, start: int) -> Rule:
        negative = self.accept("-")
        if not (self.accept("i") or self.accept("n")):
            raise self.error("Expected exponent 'i' or 'n'")
        if base == 0:
            raise self.error("Power rule base must be nonzero", start)
        return PowerRule(1 / base if negative else base)

    # maps

    def map(self) -> LinearMapSpec:
        self.skip_ws()
        start = self.pos
        if self.accept("identity") or self.accept("id"):
            return Identity()
        if self.accept("diag("):
            rule = self.rule()
            self.expect(")")
            return Diagonal(rule)
        if self.accept("table{"):
            images: List[Tuple[int, SparseSeq]] = []
            if not self.peek("}"):
                images.append(self._image())
                while self.accept(","):
                    images.append(self._image())
            self.expect("}")
            return self.build(lambda: FiniteTable(tuple(images)), start)
        if self.accept("F(f="):
            inner = self.map()
            self.expect(")")
            return example4_map(inner)
        for keyword, cls in (("compose(", Compose), ("add(", SumMap)):
            if self.accept(keyword):
                left = self.map()
                self.expect(",")
                right = self.map()
                self.expect(")")
                return cls(left, right)
        for keyword, simple in (("L", ShiftLeft), ("R", ShiftRight), ("T", TruncateFirst)):
            if self.accept(keyword):
                return simple()
        raise self.error("Expected a map")

    def _image(self) -> Tuple[int, SparseSeq]:
        i = self.index()
        self.expect("=")
        return i, self.seq()

    # functionals

    def functional(self) -> FunctionalSpec:
        if self.accept("linf"):
            return LInf()
        if self.accept("l1"):
            return L1()
        if self.accept("weighted:"):
            rule = self.rule()
            return WeightedL1(rule)
        if self.accept("rescaled:"):
            rule = self.rule()
            excluded: List[int] = []
            if self.accept(":exclude="):
                excluded.append(self.index())
                while self._comma_before_digit():
                    self.pos += 1
                    excluded.append(self.index())
            return RescaledL1(rule, frozenset(excluded))
        if self.accept("coord:"):
            return CoordinateAbs(self.index())
        for keyword, cls in (("sum(", Sum), ("max(", Max)):
            if self.accept(keyword):
                left = self.functional()
                self.expect(",")
                right = self.functional()
                self.expect(")")
                return cls(left, right)
        if self.accept("pullback:"):
            inner = self.functional()
            self.expect(":")
            return Pullback(inner, self.map())
        if self.accept("quotient:"):
            ambient = self.functional()
            self.expect(":")
            self.expect("basis=")
            basis = self.seq_list()
            return Quotient(ambient, basis)
        raise self.error("Expected a functional")

    def _comma_before_digit(self) -> bool:
        self.skip_ws()
        rest = self.text[self.pos:]
        return rest.startswith(",") and rest[1:].lstrip()[:1].isdigit()


def _parse(text: str, production: Callable[[_Parser], T]) -> T:
    parser = _Parser(text)
    result = production(parser)
    parser.end()
    return result


def parse_functional(text: str) -> FunctionalSpec:
    return _parse(text, _Parser.functional)


def parse_map(text: str) -> LinearMapSpec:
    return _parse(text, _Parser.map)


def parse_rule(text: str) -> Rule:
    return _parse(text, _Parser.rule)


def parse_seq(text: str) -> SparseSeq:
    return _parse(text, _Parser.seq)


def parse_seq_list(text: str) -> Tuple[SparseSeq, ...]:
    """``[e1+e2, e3]``; the brackets may be omitted."""
    if not text.strip().startswith("["):
        text = f"[{text}]"
    return _parse(text, _Parser.seq_list)


def parse_scalar(text: str) -> Fraction:
    """A single signed rational such as ``-3/4``."""
    return _parse(text, _Parser.signed_rational)


def parse_rational_list(text: str) -> List[Fraction]:
    """Comma-separated signed rationals, e.g. ``1,1/2,1/10``."""

    def production(parser: _Parser) -> List[Fraction]:
        values = [parser.signed_rational()]
        while parser.accept(","):
            values.append(parser.signed_rational())
        return values

    return _parse(text, production)


def format_seq(x: SparseSeq) -> str:
    if x.is_zero:
        return "0"
    parts: List[str] = []
    for i, v in x.items():
        magnitude = "" if abs(v) == 1 else f"{format_rational(abs(v))}*"
        sign = "-" if v < 0 else ("+" if parts else "")
        parts.append(f"{sign}{magnitude}e{i}")
    return "".join(parts)


def format_rule(rule: Rule) -> str:
    if isinstance(rule, PowerRule):
        base = Fraction(rule.base)
        if base.denominator == 1 and base > 0:
            return f"{base.numerator}^i"
        if base.numerator == 1:
            return f"{base.denominator}^-i"
        return f"({format_rational(base)})^i"
    if isinstance(rule, ReciprocalRule):
        return "1/n"
    if isinstance(rule, IndexRule):
        return "n"
    if isinstance(rule, ConstantRule):
        return format_rational(Fraction(rule.value))
    if isinstance(rule, TableRule):
        entries = ",".join(f"{i}={format_rational(Fraction(v))}" for i, v in rule.values)
        return f"table{{{entries};else={format_rule(rule.default)}}}"
    raise InvalidSpecError(f"Rule {rule!r} has no textual form")


def format_map(m: LinearMapSpec) -> str:
    inner = example4_inner(m)
    if inner is not None:
        return f"F(f={format_map(inner)})"
    if isinstance(m, Identity):
        return "id"
    if isinstance(m, ShiftLeft):
        return "L"
    if isinstance(m, ShiftRight):
        return "R"
    if isinstance(m, TruncateFirst):
        return "T"
    if isinstance(m, Diagonal):
        return f"diag({format_rule(m.rule)})"
    if isinstance(m, FiniteTable):
        entries = ",".join(f"{i}={format_seq(image)}" for i, image in m.images)
        return f"table{{{entries}}}"
    if isinstance(m, Compose):
        return f"compose({format_map(m.outer)},{format_map(m.inner)})"
    if isinstance(m, SumMap):
        return f"add({format_map(m.left)},{format_map(m.right)})"
    raise InvalidSpecError(f"Map {m!r} has no textual form")


def format_functional(spec: FunctionalSpec) -> str:
    if isinstance(spec, L1):
        return "l1"
    if isinstance(spec, LInf):
        return "linf"
    if isinstance(spec, WeightedL1):
        return f"weighted:{format_rule(spec.weight)}"
    if isinstance(spec, RescaledL1):
        text = f"rescaled:{format_rule(spec.scale)}"
        if spec.excluded:
            text += ":exclude=" + ",".join(str(i) for i in sorted(spec.excluded))
        return text
    if isinstance(spec, CoordinateAbs):
        return f"coord:{spec.index}"
    if isinstance(spec, Sum):
        return f"sum({format_functional(spec.left)},{format_functional(spec.right)})"
    if isinstance(spec, Max):
        return f"max({format_functional(spec.left)},{format_functional(spec.right)})"
    if isinstance(spec, Pullback):
        return f"pullback:{format_functional(spec.inner)}:{format_map(spec.map)}"
    if isinstance(spec, Quotient):
        basis = ",".join(format_seq(b) for b in spec.basis)
        return f"quotient:{format_functional(spec.ambient)}:basis=[{basis}]"
    raise InvalidSpecError(f"Functional {spec!r} has no textual form")
