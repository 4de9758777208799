"""OpenQASM 2.0 subset parser and emitter.

Accepted grammar: the ``OPENQASM 2.0;`` header, an optional
``include "qelib1.inc";`` (ignored), one ``qreg``, at most one ``creg``,
and statements built from u1/u2/u3/cx/h/measure/barrier.  Angle arguments
are arithmetic over float literals and ``pi`` (e.g. ``pi/2``, ``3*pi/4``).

Emitted text parses back to a structurally equal circuit: angles are
printed with ``repr``, the shortest decimal that round-trips the double
exactly.
"""
from __future__ import annotations

import math
import re

from .ir import Circuit, Gate, GateKind

_GATE_KINDS = {
    "u1": GateKind.U1,
    "u2": GateKind.U2,
    "u3": GateKind.U3,
    "h": GateKind.H,
    "cx": GateKind.CNOT,
}

_N_ANGLES = {"u1": 1, "u2": 2, "u3": 3, "h": 0, "cx": 0}


class QasmError(ValueError):
    """Parse failure, annotated with source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_TOKEN_RE = re.compile(
    r"""(?P<comment>//[^\n]*)
      | (?P<ws>\s+)
      | (?P<number>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)
      | (?P<name>[A-Za-z_][A-Za-z0-9_.]*)
      | (?P<string>"[^"\n]*")
      | (?P<arrow>->)
      | (?P<sym>[()\[\],;*/+-])
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind: str, text: str, line: int, column: int):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise QasmError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, tok, line, col))
        newlines = tok.count("\n")
        if newlines:
            line += newlines
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def _here(self) -> tuple[int, int]:
        if self.pos < len(self.tokens):
            t = self.tokens[self.pos]
            return t.line, t.column
        if self.tokens:
            t = self.tokens[-1]
            return t.line, t.column + len(t.text)
        return 1, 1

    def error(self, message: str) -> QasmError:
        return QasmError(message, *self._here())

    def peek(self, ahead: int = 0) -> _Token | None:
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def next(self, expect: str | None = None) -> _Token:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input" + (f", expected {expect!r}" if expect else ""))
        if expect is not None and tok.text != expect:
            raise self.error(f"expected {expect!r}, found {tok.text!r}")
        self.pos += 1
        return tok

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.text == text:
            self.pos += 1
            return True
        return False

    # expression := term (('+'|'-') term)*
    # term       := factor (('*'|'/') factor)*
    # factor     := ['-'|'+'] (number | 'pi' | '(' expression ')')
    def expression(self) -> float:
        value = self.term()
        while True:
            if self.accept("+"):
                value += self.term()
            elif self.accept("-"):
                value -= self.term()
            else:
                return value

    def term(self) -> float:
        value = self.factor()
        while True:
            if self.accept("*"):
                value *= self.factor()
            elif self.accept("/"):
                tok = self.peek()
                divisor = self.factor()
                if divisor == 0:
                    raise QasmError("division by zero in angle", tok.line, tok.column)
                value /= divisor
            else:
                return value

    def factor(self) -> float:
        if self.accept("-"):
            return -self.factor()
        if self.accept("+"):
            return self.factor()
        if self.accept("("):
            value = self.expression()
            self.next(")")
            return value
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of angle expression")
        if tok.kind == "number":
            self.pos += 1
            return float(tok.text)
        if tok.text == "pi":
            self.pos += 1
            return math.pi
        raise QasmError(f"expected a number or 'pi', found {tok.text!r}", tok.line, tok.column)


def parse_qasm(text: str) -> Circuit:
    """Parse source text into a :class:`Circuit`.

    Raises :class:`QasmError` with line/column on malformed input,
    unsupported gates, and out-of-range register indices.
    """
    p = _Parser(_tokenize(text))
    p.next("OPENQASM")
    version = p.next()
    if version.text != "2.0":
        raise QasmError(f"unsupported version {version.text!r}", version.line, version.column)
    p.next(";")

    qreg: tuple[str, int] | None = None
    creg: tuple[str, int] | None = None
    gates: list[Gate] = []

    def qubit_index() -> int:
        name = p.next()
        if qreg is None or name.text != qreg[0]:
            raise QasmError(f"unknown quantum register {name.text!r}", name.line, name.column)
        p.next("[")
        idx = p.next()
        if idx.kind != "number" or "." in idx.text:
            raise QasmError("register index must be an integer", idx.line, idx.column)
        p.next("]")
        i = int(idx.text)
        if i >= qreg[1]:
            raise QasmError(f"index {i} out of range for {qreg[0]}[{qreg[1]}]", idx.line, idx.column)
        return i

    while p.peek() is not None:
        tok = p.next()
        if tok.text == "include":
            fname = p.next()
            if fname.text != '"qelib1.inc"':
                raise QasmError(f"unsupported include {fname.text}", fname.line, fname.column)
            p.next(";")
        elif tok.text in ("qreg", "creg"):
            name = p.next()
            if name.kind != "name":
                raise QasmError("expected a register name", name.line, name.column)
            p.next("[")
            size = p.next()
            if size.kind != "number" or "." in size.text:
                raise QasmError("register size must be an integer", size.line, size.column)
            p.next("]")
            p.next(";")
            if tok.text == "qreg":
                if qreg is not None:
                    raise QasmError("only one qreg is supported", tok.line, tok.column)
                qreg = (name.text, int(size.text))
            else:
                if creg is not None:
                    raise QasmError("only one creg is supported", tok.line, tok.column)
                creg = (name.text, int(size.text))
        elif tok.text == "measure":
            q = qubit_index()
            p.next("->")
            cname = p.next()
            if creg is None or cname.text != creg[0]:
                raise QasmError(f"unknown classical register {cname.text!r}", cname.line, cname.column)
            p.next("[")
            idx = p.next()
            if idx.kind != "number" or "." in idx.text:
                raise QasmError("register index must be an integer", idx.line, idx.column)
            p.next("]")
            c = int(idx.text)
            if c >= creg[1]:
                raise QasmError(f"index {c} out of range for {creg[0]}[{creg[1]}]", idx.line, idx.column)
            p.next(";")
            gates.append(Gate(GateKind.MEASURE, (q,), clbit=c))
        elif tok.text == "barrier":
            if qreg is None:
                raise QasmError("barrier before qreg declaration", tok.line, tok.column)
            nxt, after = p.peek(), p.peek(1)
            qubits: list[int]
            if nxt is not None and nxt.text == qreg[0] and after is not None and after.text == ";":
                p.next()  # bare register name: every qubit
                qubits = list(range(qreg[1]))
            else:
                qubits = [qubit_index()]
                while p.accept(","):
                    qubits.append(qubit_index())
            p.next(";")
            gates.append(Gate(GateKind.BARRIER, tuple(qubits)))
        elif tok.kind == "name":
            kind = _GATE_KINDS.get(tok.text)
            if kind is None:
                raise QasmError(f"unsupported gate {tok.text!r}", tok.line, tok.column)
            params: list[float] = []
            if _N_ANGLES[tok.text] > 0:
                p.next("(")
                params.append(p.expression())
                while p.accept(","):
                    params.append(p.expression())
                p.next(")")
                if len(params) != _N_ANGLES[tok.text]:
                    raise QasmError(
                        f"{tok.text} takes {_N_ANGLES[tok.text]} angle(s), got {len(params)}",
                        tok.line, tok.column)
            qubits = [qubit_index()]
            while p.accept(","):
                qubits.append(qubit_index())
            p.next(";")
            if kind is GateKind.CNOT:
                if len(qubits) != 2:
                    raise QasmError("cx takes two qubits", tok.line, tok.column)
                if qubits[0] == qubits[1]:
                    raise QasmError("cx control and target must differ", tok.line, tok.column)
            elif len(qubits) != 1:
                raise QasmError(f"{tok.text} takes one qubit", tok.line, tok.column)
            gates.append(Gate(kind, tuple(qubits), tuple(params)))
        else:
            raise QasmError(f"unexpected {tok.text!r}", tok.line, tok.column)

    if qreg is None:
        raise QasmError("missing qreg declaration", 1, 1)
    return Circuit(qreg[1], creg[1] if creg else 0, tuple(gates))


def emit_qasm(circuit: Circuit) -> str:
    """Render a circuit back to source text.

    ``parse_qasm(emit_qasm(c))`` is structurally equal to ``c``.
    """
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg q[{circuit.num_qubits}];"]
    if circuit.num_clbits:
        lines.append(f"creg c[{circuit.num_clbits}];")
    for g in circuit.gates:
        if g.kind is GateKind.MEASURE:
            lines.append(f"measure q[{g.qubits[0]}] -> c[{g.clbit}];")
        elif g.kind is GateKind.BARRIER:
            lines.append("barrier " + ",".join(f"q[{q}]" for q in g.qubits) + ";")
        elif g.kind is GateKind.CNOT:
            lines.append(f"cx q[{g.qubits[0]}],q[{g.qubits[1]}];")
        else:
            args = f"({','.join(repr(p) for p in g.params)})" if g.params else ""
            lines.append(f"{g.kind.value}{args} q[{g.qubits[0]}];")
    return "\n".join(lines) + "\n"
