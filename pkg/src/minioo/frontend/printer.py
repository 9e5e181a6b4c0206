"""Canonical MiniOO layout.

Classes print as: public fields, public methods, private fields, private
methods, constructors, friends.  Re-parsing the output yields a tree equal
to the input (member lists keep their relative order).
"""

from __future__ import annotations

from . import ast
from .lexer import string_text
from .parser import BINARY_LEVELS

_PREC = {op: i for i, ops in enumerate(BINARY_LEVELS) for op in ops}
_UNARY_PREC = len(BINARY_LEVELS)
_ATOM_PREC = _UNARY_PREC + 1


def pretty_print(program: ast.Program) -> str:
    return "\n".join(_decl(d) for d in program.decls)


def _decl(d: ast.Decl) -> str:
    if isinstance(d, ast.ClassDecl):
        return _class(d)
    return f"{d.return_type} {d.name}({_params(d.params)}) {_block(d.body, 0)}\n"


def _class(c: ast.ClassDecl) -> str:
    head = ("export " if c.exported else "") + f"class {c.name}"
    if c.base is not None:
        head += f" : {c.base}"
    lines = [head + " {"]
    for vis in (ast.PUBLIC, ast.PRIVATE):
        fields = [f for f in c.fields if f.visibility == vis]
        methods = [m for m in c.methods if m.visibility == vis]
        if not fields and not methods:
            continue
        lines.append(f"  {vis}:")
        for f in fields:
            lines.append(f"    {f.type} {f.name};")
        for m in methods:
            virt = "virtual " if m.is_virtual else ""
            lines.append(
                f"    {virt}{m.return_type} {m.name}({_params(m.params)}) {_block(m.body, 4)}"
            )
    for k in c.ctors:
        inits = ([k.base_init] if k.base_init else []) + k.field_inits
        init_text = ""
        if inits:
            init_text = " : " + ", ".join(f"{i.name}({_args(i.args)})" for i in inits)
        lines.append(f"  {c.name}({_params(k.params)}){init_text} {_block(k.body, 2)}")
    for fr in c.friends:
        lines.append(f"  friend {fr.name};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _params(params: list[ast.Param]) -> str:
    out = []
    for p in params:
        mode = "" if p.mode == ast.VALUE else p.mode + " "
        out.append(f"{mode}{p.type} {p.name}")
    return ", ".join(out)


def _block(stmts: list[ast.Stmt], indent: int) -> str:
    if not stmts:
        return "{\n" + " " * indent + "}"
    inner = "".join(_stmt(s, indent + 2) for s in stmts)
    return "{\n" + inner + " " * indent + "}"


def _stmt(s: ast.Stmt, indent: int) -> str:
    pad = " " * indent
    if isinstance(s, ast.Let):
        return f"{pad}let {s.name} = {expr_text(s.value)};\n"
    if isinstance(s, ast.Assign):
        return f"{pad}{expr_text(s.target)} = {expr_text(s.value)};\n"
    if isinstance(s, ast.If):
        text = f"{pad}if ({expr_text(s.cond)}) {_block(s.then, indent)}"
        if s.orelse is not None:
            text += f" else {_block(s.orelse, indent)}"
        return text + "\n"
    if isinstance(s, ast.While):
        return f"{pad}while ({expr_text(s.cond)}) {_block(s.body, indent)}\n"
    if isinstance(s, ast.Return):
        if s.value is None:
            return f"{pad}return;\n"
        return f"{pad}return {expr_text(s.value)};\n"
    if isinstance(s, ast.Assert):
        return f"{pad}assert({expr_text(s.cond)});\n"
    if isinstance(s, ast.ExprStmt):
        return f"{pad}{expr_text(s.expr)};\n"
    raise TypeError(f"unknown statement {s!r}")


def _prec(e: ast.Expr) -> int:
    if isinstance(e, ast.Binary):
        return _PREC[e.op]
    if isinstance(e, ast.Unary):
        return _UNARY_PREC
    return _ATOM_PREC


def _args(args: list[ast.Expr]) -> str:
    return ", ".join(expr_text(a) for a in args)


def expr_text(e: ast.Expr) -> str:
    if isinstance(e, ast.IntLit):
        return str(e.value)
    if isinstance(e, ast.BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, ast.StrLit):
        return string_text(e.value)
    if isinstance(e, ast.NilLit):
        return "nil"
    if isinstance(e, ast.Var):
        return e.name
    if isinstance(e, (ast.FieldAccess, ast.MethodCall)):
        obj = expr_text(e.obj)
        if _prec(e.obj) < _ATOM_PREC:
            obj = f"({obj})"
        if isinstance(e, ast.FieldAccess):
            return f"{obj}.{e.name}"
        return f"{obj}.{e.name}({_args(e.args)})"
    if isinstance(e, ast.Call):
        return f"{e.name}({_args(e.args)})"
    if isinstance(e, ast.New):
        return f"new {e.cls}({_args(e.args)})"
    if isinstance(e, ast.Builtin):
        return f"{e.op}({_args(e.args)})"
    if isinstance(e, ast.Unary):
        inner = expr_text(e.operand)
        if _prec(e.operand) < _UNARY_PREC:
            inner = f"({inner})"
        return f"{e.op}{inner}"
    if isinstance(e, ast.Binary):
        p = _PREC[e.op]
        left, right = expr_text(e.left), expr_text(e.right)
        if _prec(e.left) < p:
            left = f"({left})"
        if _prec(e.right) <= p:
            right = f"({right})"
        return f"{left} {e.op} {right}"
    raise TypeError(f"unknown expression {e!r}")
