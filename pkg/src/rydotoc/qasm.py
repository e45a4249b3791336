"""OpenQASM 2.0 emission and parsing for the ``x h cx u1 u3 measure barrier`` subset.

Angles are written with 17 significant digits, which round-trips every
double exactly. The parser also accepts constant expressions built from
numbers, ``pi``, ``+ - * /`` and parentheses, so hand-written listings such
as ``u3(pi/2,0,pi) q[0];`` load. OpenQASM has no global phase; it is
dropped on emission and a parsed circuit has ``global_phase == 0``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .circuit import Circuit, Op
from .errors import CapabilityError, EmissionError, QasmSyntaxError

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'

_GATES = {"x": ("X", 0, 1), "h": ("H", 0, 1), "u1": ("U1", 1, 1), "u3": ("U3", 3, 1),
          "cx": ("CNOT", 0, 2)}


def _fmt(a: float) -> str:
    s = format(a, ".17g")
    return "0" if s in ("0", "-0") else s


def _q(i: int) -> str:
    return f"q[{i}]"


def emit_qasm(circuit: Circuit) -> str:
    """Render ``circuit`` as OpenQASM 2.0.

    Anti-controlled CNOTs are written as ``x; cx; x``. Any other op outside
    the subset (CU1, CU3, CPHASE) raises :class:`EmissionError`; run
    :func:`rydotoc.circuit.lower_to_basis` first.
    """
    lines = [HEADER.rstrip("\n"), f"qreg q[{circuit.n_qubits}];"]
    clbits = [c for op in circuit.ops for c in op.clbits]
    if clbits:
        lines.append(f"creg c[{max(clbits) + 1}];")
    for k, op in enumerate(circuit.ops):
        kind = op.kind
        if kind == "X":
            lines.append(f"x {_q(op.targets[0])};")
        elif kind == "H":
            lines.append(f"h {_q(op.targets[0])};")
        elif kind == "U1":
            lines.append(f"u1({_fmt(op.params[0])}) {_q(op.targets[0])};")
        elif kind == "U3":
            args = ",".join(_fmt(p) for p in op.params)
            lines.append(f"u3({args}) {_q(op.targets[0])};")
        elif kind == "CNOT":
            c, t = op.controls[0], op.targets[0]
            if op.anti:
                lines += [f"x {_q(c)};", f"cx {_q(c)},{_q(t)};", f"x {_q(c)};"]
            else:
                lines.append(f"cx {_q(c)},{_q(t)};")
        elif kind == "MEASURE":
            lines.append(f"measure {_q(op.targets[0])} -> c[{op.clbits[0]}];")
        elif kind == "BARRIER":
            lines.append("barrier " + ",".join(_q(t) for t in op.targets) + ";")
        else:
            raise EmissionError(f"op {k} ({kind} on {op.qubits}) is outside the QASM subset")
    return "\n".join(lines) + "\n"


_TOKEN = re.compile(
    r"""(?P<ws>[ \t\r]+)
      |(?P<nl>\n)
      |(?P<comment>//[^\n]*)
      |(?P<real>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?)
      |(?P<id>[A-Za-z_][A-Za-z0-9_]*)
      |(?P<str>"[^"\n]*")
      |(?P<arrow>->)
      |(?P<sym>[()\[\],;+\-*/])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise QasmSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.qregs: dict[str, tuple[int, int]] = {}
        self.cregs: dict[str, tuple[int, int]] = {}
        self.nq = 0
        self.nc = 0
        self.ops: list[Op] = []

    # token helpers
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        return QasmSyntaxError(f"{msg} (found {found!r})", tok.line, tok.col)

    def take(self, kind: str, text: str | None = None) -> _Tok:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            raise self.error(f"expected {text or kind}")
        self.i += 1
        return t

    def peek(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("sym", "arrow", "id")

    # grammar
    def program(self) -> Circuit:
        self.take("id", "OPENQASM")
        version = self.take("real")
        if version.text not in ("2.0", "2"):
            raise self.error("only OPENQASM 2.0 is supported", version)
        self.take("sym", ";")
        while self.tok.kind != "eof":
            self.statement()
        if self.nq == 0:
            raise self.error("no qreg declared")
        return Circuit(self.nq, self.ops)

    def statement(self):
        t = self.tok
        if t.kind != "id":
            raise self.error("expected a statement")
        name = t.text
        if name == "include":
            self.i += 1
            self.take("str")
            self.take("sym", ";")
        elif name in ("qreg", "creg"):
            self.i += 1
            reg = self.take("id").text
            self.take("sym", "[")
            size = self.integer()
            self.take("sym", "]")
            self.take("sym", ";")
            table = self.qregs if name == "qreg" else self.cregs
            if reg in self.qregs or reg in self.cregs:
                raise self.error(f"register {reg!r} redeclared", t)
            if name == "qreg":
                table[reg] = (self.nq, size)
                self.nq += size
            else:
                table[reg] = (self.nc, size)
                self.nc += size
        elif name == "measure":
            self.i += 1
            q = self.arg(self.qregs, "qubit")
            self.take("arrow")
            c = self.arg(self.cregs, "classical bit")
            self.take("sym", ";")
            self.ops.append(Op("MEASURE", (q,), clbits=(c,)))
        elif name == "barrier":
            self.i += 1
            qs = self.arg_list(allow_register=True)
            self.take("sym", ";")
            self.ops.append(Op("BARRIER", tuple(qs)))
        elif name in _GATES:
            self.gate(name)
        else:
            raise CapabilityError(
                f"line {t.line}, column {t.col}: {name!r} is outside the supported QASM subset"
            )

    def gate(self, name: str):
        start = self.tok
        kind, n_params, n_args = _GATES[name]
        self.i += 1
        params: list[float] = []
        if self.peek("("):
            self.i += 1
            if not self.peek(")"):
                params.append(self.expr())
                while self.peek(","):
                    self.i += 1
                    params.append(self.expr())
            self.take("sym", ")")
        if len(params) != n_params:
            raise self.error(f"{name} takes {n_params} parameters, got {len(params)}", start)
        qs = self.arg_list()
        if len(qs) != n_args:
            raise self.error(f"{name} takes {n_args} qubit arguments, got {len(qs)}")
        self.take("sym", ";")
        if len(set(qs)) != len(qs):
            raise self.error(f"{name} repeats a qubit", start)
        if kind == "CNOT":
            self.ops.append(Op("CNOT", (qs[1],), (qs[0],)))
        else:
            self.ops.append(Op(kind, (qs[0],), params=tuple(params)))

    def integer(self) -> int:
        t = self.take("real")
        if not t.text.isdigit():
            raise self.error("expected an integer", t)
        return int(t.text)

    def arg(self, regs, what: str) -> int:
        t = self.take("id")
        if t.text not in regs:
            raise self.error(f"unknown {what} register {t.text!r}", t)
        self.take("sym", "[")
        idx_tok = self.tok
        idx = self.integer()
        self.take("sym", "]")
        offset, size = regs[t.text]
        if idx >= size:
            raise self.error(f"index {idx} out of range for {t.text}[{size}]", idx_tok)
        return offset + idx

    def arg_list(self, allow_register: bool = False) -> list[int]:
        out = []
        while True:
            t = self.tok
            if allow_register and t.kind == "id" and self.toks[self.i + 1].text != "[":
                if t.text not in self.qregs:
                    raise self.error(f"unknown qubit register {t.text!r}", t)
                self.i += 1
                offset, size = self.qregs[t.text]
                out += list(range(offset, offset + size))
            else:
                out.append(self.arg(self.qregs, "qubit"))
            if not self.peek(","):
                return out
            self.i += 1

    # constant expressions
    def expr(self) -> float:
        val = self.term()
        while self.peek("+") or self.peek("-"):
            op = self.take("sym").text
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> float:
        val = self.unary()
        while self.peek("*") or self.peek("/"):
            op = self.take("sym").text
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self) -> float:
        if self.peek("-"):
            self.i += 1
            return -self.unary()
        if self.peek("+"):
            self.i += 1
            return self.unary()
        return self.atom()

    def atom(self) -> float:
        t = self.tok
        if t.kind == "real":
            self.i += 1
            return float(t.text)
        if t.kind == "id" and t.text == "pi":
            self.i += 1
            return math.pi
        if self.peek("("):
            self.i += 1
            val = self.expr()
            self.take("sym", ")")
            return val
        raise self.error("expected a number, 'pi' or '('")


def parse_qasm(text: str) -> Circuit:
    """Parse the subset written by :func:`emit_qasm` into a :class:`Circuit`."""
    return _Parser(text).program()
