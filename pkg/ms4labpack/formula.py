# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

"""
Bimodal formulas over the modalities ◊ (``Dia``) and ∃ (``Ex``).

Only the primitive connectives are node types. The derived modalities are
plain functions building primitive trees, so two formulas are equal exactly
when their primitive trees are:

>>> Box(Var('p')) == Not(Dia(Not(Var('p'))))
True
>>> to_text(parse('[#]p -> <>E p'))
'([#]p -> <#>p)'
>>> [str(a) for a in (AxiomName.p(2), AxiomName.p0(1), AxiomName.rp(3))]
['P2', 'P0_1', 'rp3']
"""

import dataclasses
import enum
import re
import typing

from ms4labpack.errors import FormulaSyntaxError, InvalidArgument


class Formula:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclasses.dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclasses.dataclass(frozen=True)
class Top(Formula):
    pass


@dataclasses.dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclasses.dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclasses.dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclasses.dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclasses.dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclasses.dataclass(frozen=True)
class Dia(Formula):
    arg: Formula


@dataclasses.dataclass(frozen=True)
class Ex(Formula):
    arg: Formula


def Box(phi):
    return Not(Dia(Not(phi)))


def All(phi):
    return Not(Ex(Not(phi)))


def BDia(phi):
    return Dia(Ex(phi))


def BBox(phi):
    return Not(BDia(Not(phi)))


def SDia(phi):
    return Or(Dia(phi), Ex(phi))


_UNARY = (Not, Dia, Ex)
_BINARY = (And, Or, Imp)


def children(phi):
    if isinstance(phi, _UNARY):
        return (phi.arg,)
    if isinstance(phi, _BINARY):
        return (phi.left, phi.right)
    return ()


def subterms(phi):
    """
    All subformulas of `phi`, each listed once, in post-order of their
    first occurrence. `phi` itself is the last entry.
    """
    seen = {}
    stack = [(phi, False)]
    while stack:
        node, expanded = stack.pop()
        if node in seen:
            continue
        if expanded:
            seen[node] = None
            continue
        stack.append((node, True))
        for child in reversed(children(node)):
            stack.append((child, False))
    return tuple(seen)


def variables(phi):
    return sorted({s.name for s in subterms(phi) if isinstance(s, Var)})


def substitute(phi, mapping):
    """
    Replace every variable named in `mapping` simultaneously.
    """
    if isinstance(phi, Var):
        return mapping.get(phi.name, phi)
    if isinstance(phi, _UNARY):
        return type(phi)(substitute(phi.arg, mapping))
    if isinstance(phi, _BINARY):
        return type(phi)(substitute(phi.left, mapping), substitute(phi.right, mapping))
    return phi


def zero_transform(phi):
    """
    Replace every ◊ by ◊∃. Applying this twice is not the same as once.
    """
    if isinstance(phi, Dia):
        return Dia(Ex(zero_transform(phi.arg)))
    if isinstance(phi, _UNARY):
        return type(phi)(zero_transform(phi.arg))
    if isinstance(phi, _BINARY):
        return type(phi)(zero_transform(phi.left), zero_transform(phi.right))
    return phi


def modal_depth(phi):
    if isinstance(phi, (Dia, Ex)):
        return 1 + modal_depth(phi.arg)
    return max((modal_depth(c) for c in children(phi)), default=0)


# Printing

_BINARY_OPS = {And: '&', Or: '|', Imp: '->'}


def _contract(phi):
    """
    Recognise a derived modality at the top of `phi`.
    Returns the printed operator and its argument, or None.
    """
    if isinstance(phi, Not):
        inner = phi.arg
        if isinstance(inner, Dia):
            if isinstance(inner.arg, Ex) and isinstance(inner.arg.arg, Not):
                return '[#]', inner.arg.arg.arg
            if isinstance(inner.arg, Not):
                return '[]', inner.arg.arg
        if isinstance(inner, Ex) and isinstance(inner.arg, Not):
            return 'A', inner.arg.arg
        return '~', inner
    if isinstance(phi, Or):
        if (isinstance(phi.left, Dia) and isinstance(phi.right, Ex) and
                phi.left.arg == phi.right.arg):
            return '<+>', phi.left.arg
    if isinstance(phi, Dia):
        if isinstance(phi.arg, Ex):
            return '<#>', phi.arg.arg
        return '<>', phi.arg
    if isinstance(phi, Ex):
        return 'E', phi.arg
    return None


def to_text(phi):
    if isinstance(phi, Var):
        return phi.name
    if isinstance(phi, Top):
        return 'true'
    if isinstance(phi, Bot):
        return 'false'

    contracted = _contract(phi)
    if contracted is not None:
        op, arg = contracted
        text = to_text(arg)
        # 'E' and 'A' need a separator in front of a name.
        if op in ('E', 'A') and (text[0].isalnum() or text[0] == '_'):
            return f'{op} {text}'
        return op + text

    return f'({to_text(phi.left)} {_BINARY_OPS[type(phi)]} {to_text(phi.right)})'


# Parsing

_UNICODE = {
    '¬': '~', '∧': '&', '∨': '|', '→': '->', '◊': '<>', '◇': '<>', '□': '[]',
    '∃': 'E', '∀': 'A', '⧫': '<#>', '■': '[#]', '◆': '<+>', '⊤': 'true', '⊥': 'false',
}

_TOKEN_RE = re.compile(r"""
    (?P<space>\s+)
  | (?P<op><\#>|\[\#\]|<\+>|<>|\[\]|->|[~&|()])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<unicode>[¬∧∨→◊◇□∃∀⧫■◆⊤⊥])
""", re.VERBOSE)

_PREFIX = {
    '~': Not,
    '<>': Dia,
    '[]': Box,
    'E': Ex,
    'A': All,
    '<#>': BDia,
    '[#]': BBox,
    '<+>': SDia,
}


def _tokenize(text):
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f'unexpected character {text[pos]!r}', pos)
        kind = m.lastgroup
        if kind == 'unicode':
            value = _UNICODE[m.group()]
            yield ('ident' if value in ('true', 'false', 'E', 'A') else 'op'), value, pos
        elif kind != 'space':
            yield kind, m.group(), pos
        pos = m.end()
    yield 'end', '', pos


class _Parser:
    def __init__(self, text):
        self.tokens = list(_tokenize(text))
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def _advance(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def _expect(self, value):
        kind, tok, pos = self.current
        if tok != value or kind == 'end':
            found = 'end of input' if kind == 'end' else repr(tok)
            raise FormulaSyntaxError(f'expected {value!r}, found {found}', pos)
        self._advance()

    def parse(self):
        phi = self._implication()
        kind, tok, pos = self.current
        if kind != 'end':
            raise FormulaSyntaxError(f'unexpected {tok!r}', pos)
        return phi

    def _implication(self):
        left = self._disjunction()
        if self.current[1] == '->' and self.current[0] == 'op':
            self._advance()
            return Imp(left, self._implication())
        return left

    def _disjunction(self):
        left = self._conjunction()
        while self.current[:2] == ('op', '|'):
            self._advance()
            left = Or(left, self._conjunction())
        return left

    def _conjunction(self):
        left = self._unary()
        while self.current[:2] == ('op', '&'):
            self._advance()
            left = And(left, self._unary())
        return left

    def _unary(self):
        kind, tok, pos = self.current
        if tok in _PREFIX and (kind == 'op' or tok in ('E', 'A')):
            self._advance()
            return _PREFIX[tok](self._unary())
        if kind == 'op' and tok == '(':
            self._advance()
            phi = self._implication()
            self._expect(')')
            return phi
        if kind == 'ident':
            self._advance()
            if tok == 'true':
                return Top()
            if tok == 'false':
                return Bot()
            return Var(tok)
        found = 'end of input' if kind == 'end' else repr(tok)
        raise FormulaSyntaxError(f'expected a formula, found {found}', pos)


def parse(text):
    """
    Parse the ASCII (or Unicode) syntax into a primitive formula tree.

    >>> parse('E p -> <>p')
    Imp(left=Ex(arg=Var(name='p')), right=Dia(arg=Var(name='p')))
    """
    return _Parser(text).parse()


# Named axioms

class AxiomKind(enum.Enum):
    MS4AX = 'MS4'
    BAR = 'bar'
    MCAS_PLUS = 'mcas'
    GRZ = 'grz'
    SC = 'sc'
    ED = 'ed'
    P = 'P'
    P0 = 'P0_'
    RP = 'rp'


_PARAMETRISED = (AxiomKind.P, AxiomKind.P0, AxiomKind.RP)


@dataclasses.dataclass(frozen=True)
class AxiomName:
    kind: AxiomKind
    n: typing.Optional[int] = None

    def __post_init__(self):
        if self.kind in _PARAMETRISED:
            if self.n is None or self.n < 1:
                raise InvalidArgument(f'{self.kind.value} needs a parameter >= 1, got {self.n}')
        elif self.n is not None:
            raise InvalidArgument(f'{self.kind.value} takes no parameter')

    def __str__(self):
        if self.kind in _PARAMETRISED:
            return f'{self.kind.value}{self.n}'
        return self.kind.value

    @classmethod
    def p(cls, n):
        return cls(AxiomKind.P, n)

    @classmethod
    def p0(cls, n):
        return cls(AxiomKind.P0, n)

    @classmethod
    def rp(cls, m):
        return cls(AxiomKind.RP, m)


MS4AX = AxiomName(AxiomKind.MS4AX)
BAR = AxiomName(AxiomKind.BAR)
MCAS_PLUS = AxiomName(AxiomKind.MCAS_PLUS)
GRZ = AxiomName(AxiomKind.GRZ)
SC = AxiomName(AxiomKind.SC)
ED = AxiomName(AxiomKind.ED)

_SIMPLE_NAMES = {
    'ms4': MS4AX,
    'ms4ax': MS4AX,
    'bar': BAR,
    'barcan': BAR,
    'mcas': MCAS_PLUS,
    'm+cas': MCAS_PLUS,
    'mcasplus': MCAS_PLUS,
    'grz': GRZ,
    'sc': SC,
    'ed': ED,
}

_NAME_RE = re.compile(r'(?P<kind>P0_|P|rp)(?P<n>\d+)', re.IGNORECASE)


def axiom_from_name(text):
    """
    >>> axiom_from_name('P0_2') == AxiomName.p0(2)
    True
    """
    name = _SIMPLE_NAMES.get(text.strip().lower())
    if name is not None:
        return name
    m = _NAME_RE.fullmatch(text.strip())
    if m is None:
        raise InvalidArgument(f'unknown axiom {text!r}')
    kind = {'p0_': AxiomKind.P0, 'p': AxiomKind.P, 'rp': AxiomKind.RP}[m['kind'].lower()]
    return AxiomName(kind, int(m['n']))


def _p_axiom(n):
    q = Var(f'q{n}')
    if n == 1:
        return Imp(Dia(Box(q)), Box(q))
    return Imp(Dia(And(Box(q), Not(_p_axiom(n - 1)))), Box(q))


def _disjunction(formulas):
    result = formulas[0]
    for phi in formulas[1:]:
        result = Or(result, phi)
    return result


def _sdia_power(i, phi):
    for _ in range(i):
        phi = SDia(phi)
    return phi


def _rp_axiom(m):
    p = [Var(f'p{i}') for i in range(m + 2)]

    antecedent = p[m + 1]
    for k in range(m, -1, -1):
        antecedent = And(p[k], SDia(antecedent))

    disjuncts = [_sdia_power(i, And(p[i], p[j]))
                 for i in range(m + 2) for j in range(i + 1, m + 2)]
    disjuncts += [_sdia_power(i, And(p[i], SDia(p[j + 1])))
                  for i in range(m + 1) for j in range(i + 1, m + 1)]

    return Imp(antecedent, _disjunction(disjuncts))


def build_axiom(name):
    p = Var('p')
    q = Var('q')

    if name.kind is AxiomKind.MS4AX:
        return Imp(Ex(Dia(p)), Dia(Ex(p)))
    if name.kind is AxiomKind.BAR:
        return Imp(Dia(Ex(p)), Ex(Dia(p)))
    if name.kind is AxiomKind.MCAS_PLUS:
        return Imp(BBox(Imp(Box(Imp(Box(p), BBox(p))), BBox(p))), BBox(p))
    if name.kind is AxiomKind.GRZ:
        return Imp(Box(Imp(Box(Imp(p, Box(p))), p)), p)
    if name.kind is AxiomKind.SC:
        return Or(Box(Imp(Box(p), q)), Box(Imp(Box(q), p)))
    if name.kind is AxiomKind.ED:
        return Imp(Ex(p), Dia(p))
    if name.kind is AxiomKind.P:
        return _p_axiom(name.n)
    if name.kind is AxiomKind.P0:
        return zero_transform(_p_axiom(name.n))
    return _rp_axiom(name.n)
