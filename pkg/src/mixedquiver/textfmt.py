"""Tokenizing and evaluating the small expression language used for coefficients.

Grammar (usual precedence, ``^`` binds tightest and takes an integer)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ['^' INT]
    atom   := INT | NAME | '(' expr ')'

Evaluation is delegated to callbacks so the same parser serves both tower
backends.
"""

import re

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class ParseError(ValueError):
    pass


def tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"cannot tokenize {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("int", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r} in {text!r}")
            tokens.append(("op", op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, from_int, variable, text):
        self.tokens = tokens
        self.i = 0
        self.from_int = from_int
        self.variable = variable
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"unexpected token {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        negate = False
        if self.peek() == ("op", "-"):
            self.take()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.factor()
            acc = acc * rhs if op == "*" else acc / rhs
        return acc

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            exp = self.take("int")[1]
            result = self.from_int(1)
            for _ in range(exp):
                result = result * base
            return result
        return base

    def atom(self):
        kind, value = self.peek()
        if kind == "int":
            self.take()
            return self.from_int(value)
        if kind == "name":
            self.take()
            return self.variable(value)
        if (kind, value) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        if (kind, value) == ("op", "-"):
            self.take()
            return -self.factor()
        raise ParseError(f"unexpected token {value!r} in {self.text!r}")


def evaluate(text, from_int, variable):
    """Parse ``text`` and fold it with ``from_int``/``variable`` and operators."""
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    parser = _Parser(tokens, from_int, variable, text)
    value = parser.expr()
    if parser.i != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return value


def split_top_level(text, sep):
    """Split on ``sep`` occurrences that sit outside parentheses."""
    parts = []
    depth = 0
    start = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(sep, i):
            parts.append(text[start:i])
            i += len(sep)
            start = i
            continue
        i += 1
    parts.append(text[start:])
    return parts


def wrap(coef_text):
    """Parenthesize a coefficient literal unless it is a single atom."""
    if re.fullmatch(r"[A-Za-z0-9_^*]+", coef_text):
        return coef_text
    return f"({coef_text})"


def split_terms(text):
    """Split element text into (sign, chunk) pairs at top-level ' + ' / ' - '."""
    out = []
    sign = 1
    depth = 0
    start = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and i > 0 and text[i - 1] == " " and text[i + 1:i + 2] == " ":
            out.append((sign, text[start:i].strip()))
            sign = 1 if ch == "+" else -1
            start = i + 1
        i += 1
    out.append((sign, text[start:].strip()))
    return [(s, c) for s, c in out if c]


def split_coefficient(chunk):
    """``'c * word'`` -> ``('c', 'word')``; a bare word gets coefficient None."""
    parts = split_top_level(chunk, " * ")
    if len(parts) == 1:
        return None, chunk.strip()
    return " * ".join(parts[:-1]).strip(), parts[-1].strip()
