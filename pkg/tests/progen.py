"""Random well-typed MiniOO programs for property tests.

Every class field is public and every name is fresh, so the output always
resolves.  With ``assignments=False`` no assignment statement is emitted
anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field


@dataclass
class _Class:
    name: str
    base: str | None
    fields: dict[str, str]  # own fields
    methods: dict[str, tuple[str, list[str]]] = field(default_factory=dict)  # name -> (ret, param types)


@dataclass
class _Fun:
    name: str
    params: list[tuple[str, str, str]]  # (mode, type, name)
    ret: str


class ProgramGen:
    def __init__(self, seed: int, assignments: bool = True):
        self.rng = random.Random(seed)
        self.assignments = assignments
        self.classes: list[_Class] = []
        self.funs: list[_Fun] = []
        self.counter = 0

    def fresh(self, prefix: str) -> str:
        self.counter += 1
        return f"{prefix}{self.counter}"

    # -- types ---------------------------------------------------------------

    def all_fields(self, cls: str) -> dict[str, str]:
        out: dict[str, str] = {}
        c = self.cls(cls)
        while c is not None:
            out.update(c.fields)
            c = self.cls(c.base) if c.base else None
        return out

    def all_methods(self, cls: str) -> dict[str, tuple[str, list[str]]]:
        out: dict[str, tuple[str, list[str]]] = {}
        c = self.cls(cls)
        while c is not None:
            for k, v in c.methods.items():
                out.setdefault(k, v)
            c = self.cls(c.base) if c.base else None
        return out

    def cls(self, name: str) -> _Class | None:
        return next((c for c in self.classes if c.name == name), None)

    def subclasses(self, name: str) -> list[str]:
        out = []
        for c in self.classes:
            cur: _Class | None = c
            while cur is not None:
                if cur.name == name:
                    out.append(c.name)
                    break
                cur = self.cls(cur.base) if cur.base else None
        return out

    def types(self) -> list[str]:
        return ["int", "bool", "list"] + [c.name for c in self.classes]

    # -- expressions ---------------------------------------------------------

    def expr(self, t: str, scope: dict[str, str], depth: int = 0, exact: bool = False) -> str:
        """An expression of type ``t``, or of a subclass unless ``exact``."""
        r = self.rng
        vars_ = [v for v, vt in scope.items() if vt == t or (not exact and vt in self.subclasses(t))]
        leaf = depth >= 2 or r.random() < 0.4
        if t == "int":
            options = [lambda: str(r.randint(0, 9))]
            if vars_:
                options.append(lambda: r.choice(vars_))
            objs = [v for v, vt in scope.items() if vt in self.classes_names() and "int" in self.all_fields(vt).values()]
            if objs:
                def field_read():
                    o = r.choice(objs)
                    f = r.choice([k for k, ft in self.all_fields(scope[o]).items() if ft == "int"])
                    return f"{o}.{f}"
                options.append(field_read)
            if not leaf:
                options.append(lambda: f"{self.expr('int', scope, depth + 1)} {r.choice('+-*')} {self.expr('int', scope, depth + 1)}")
                options += self.call_options("int", scope, depth)
            return r.choice(options)()
        if t == "bool":
            options = [lambda: r.choice(["true", "false"])]
            if vars_:
                options.append(lambda: r.choice(vars_))
            if not leaf:
                options.append(lambda: f"{self.expr('int', scope, depth + 1)} {r.choice(['<', '==', '>='])} {self.expr('int', scope, depth + 1)}")
                options.append(lambda: f"is_nil({self.expr('list', scope, depth + 1)})")
                options += self.call_options("bool", scope, depth)
            return r.choice(options)()
        if t == "list":
            options = [lambda: "nil"]
            if vars_:
                options.append(lambda: r.choice(vars_))
            if not leaf:
                options.append(lambda: f"cons({self.expr('int', scope, depth + 1)}, {self.expr('list', scope, depth + 1)})")
                options += self.call_options("list", scope, depth)
            return r.choice(options)()
        # class type
        options = [lambda: f"new {t if exact else r.choice(self.subclasses(t))}()"]
        if vars_:
            options += [lambda: r.choice(vars_)] * 2
        if not leaf and not exact:
            options += self.call_options(t, scope, depth)
        return r.choice(options)()

    def classes_names(self) -> list[str]:
        return [c.name for c in self.classes]

    def call_options(self, t: str, scope: dict[str, str], depth: int) -> list:
        r = self.rng
        out = []
        for f in self.funs:
            if f.ret == t:
                out.append(lambda f=f: f"{f.name}({', '.join(self.expr(pt, scope, depth + 1) for _, pt, _ in f.params)})")
        for v, vt in scope.items():
            if vt in self.classes_names():
                for m, (ret, ptypes) in self.all_methods(vt).items():
                    if ret == t:
                        out.append(lambda v=v, m=m, ptypes=ptypes: f"{v}.{m}({', '.join(self.expr(pt, scope, depth + 1) for pt in ptypes)})")
        return out

    # -- statements ----------------------------------------------------------

    def block(self, scope: dict[str, str], assignable: dict[str, str], depth: int, n: int) -> list[str]:
        r = self.rng
        out = []
        for _ in range(n):
            kind = r.choice(["let", "let", "assign", "field", "call", "if", "while"])
            if kind == "let" or depth >= 2 and kind in ("if", "while"):
                t = r.choice(self.types())
                name = self.fresh("v")
                out.append(f"let {name} = {self.expr(t, scope, exact=True)};")
                scope[name] = t
                assignable[name] = t
            elif kind == "assign" and self.assignments and assignable:
                v = r.choice(sorted(assignable))
                out.append(f"{v} = {self.expr(assignable[v], scope)};")
            elif kind == "field" and self.assignments:
                objs = [v for v, vt in scope.items() if vt in self.classes_names() and self.all_fields(vt)]
                if objs:
                    o = r.choice(objs)
                    f, ft = r.choice(sorted(self.all_fields(scope[o]).items()))
                    out.append(f"{o}.{f} = {self.expr(ft, scope)};")
            elif kind == "call":
                opts = []
                for t in self.types():
                    opts += self.call_options(t, scope, 0)
                for v, vt in scope.items():
                    if vt in self.classes_names():
                        for m, (ret, ptypes) in self.all_methods(vt).items():
                            if ret == "unit":
                                opts.append(lambda v=v, m=m, ptypes=ptypes: f"{v}.{m}({', '.join(self.expr(pt, scope, 1) for pt in ptypes)})")
                if opts:
                    out.append(f"{r.choice(opts)()};")
            elif kind == "if":
                cond = self.expr("bool", scope)
                then = self.block(dict(scope), dict(assignable), depth + 1, r.randint(0, 2))
                orelse = self.block(dict(scope), dict(assignable), depth + 1, r.randint(0, 2))
                out.append("if (" + cond + ") {\n" + "\n".join(then) + "\n} else {\n" + "\n".join(orelse) + "\n}")
            elif kind == "while":
                # bounded: the condition is false from the start
                body = self.block(dict(scope), dict(assignable), depth + 1, r.randint(0, 2))
                out.append("while (false) {\n" + "\n".join(body) + "\n}")
        return out

    # -- declarations --------------------------------------------------------

    def gen_class(self) -> str:
        r = self.rng
        i = len(self.classes)
        name = f"K{i}"
        base = r.choice([None] + self.classes_names()) if self.classes else None
        fields = {f"n{i}": "int", f"xs{i}": "list"}
        if self.classes and r.random() < 0.5:
            fields[f"o{i}"] = r.choice(self.classes_names())
        c = _Class(name, base, fields)
        self.classes.append(c)
        methods = []
        scope = {"this": name}
        # read-only method
        mname = f"get{i}"
        c.methods[mname] = ("int", [])
        methods.append(f"    int {mname}() {{\n      return this.n{i};\n    }}")
        # possibly mutating method
        mname = f"bump{i}"
        c.methods[mname] = ("unit", ["int"])
        body = f"this.n{i} = this.n{i} + k;" if self.assignments and r.random() < 0.7 else f"let t{i} = k + this.n{i};"
        virt = "virtual " if r.random() < 0.3 else ""
        methods.append(f"    {virt}unit {mname}(int k) {{\n      {body}\n    }}")
        # maybe override an inherited unit method
        if base:
            inherited = [m for m, (ret, _) in self.all_methods(base).items() if m.startswith("bump")]
            if inherited and r.random() < 0.5:
                m = r.choice(inherited)
                stmt = f"this.n{i} = k;" if self.assignments else "let unused = k;"
                methods.append(f"    unit {m}(int k) {{\n      {stmt}\n    }}")
        inits = [f"n{i}(0)", f"xs{i}(nil)"]
        if base:
            inits.insert(0, f"{base}()")
        export = "export " if r.random() < 0.5 else ""
        head = f"{export}class {name}" + (f" : {base}" if base else "")
        field_lines = [f"    {t} {n};" for n, t in fields.items()]
        del scope
        return (head + " {\n  public:\n" + "\n".join(field_lines + methods)
                + f"\n  {name}() : {', '.join(inits)} {{}}\n}}\n")

    def gen_fun(self) -> str:
        r = self.rng
        name = self.fresh("f")
        params = []
        for _ in range(r.randint(0, 3)):
            params.append((r.choice(["", "ref ", "constref "]), r.choice(self.types()), self.fresh("p")))
        ret = r.choice(self.types() + ["unit"])
        f = _Fun(name, params, ret)
        scope = {p: t for _, t, p in params}
        assignable = {p: t for m, t, p in params}
        body = self.block(scope, assignable, 0, r.randint(1, 5))
        self.funs.append(f)  # after the body: no recursion, so no unbounded runs
        if ret != "unit":
            body.append(f"return {self.expr(ret, scope)};")
        sig = ", ".join(f"{m}{t} {p}" for m, t, p in params)
        return f"{ret} {name}({sig}) {{\n" + "\n".join(body) + "\n}\n"

    def program(self) -> str:
        r = self.rng
        parts = [self.gen_class() for _ in range(r.randint(1, 3))]
        parts += [self.gen_fun() for _ in range(r.randint(1, 5))]
        return "\n".join(parts)


def random_program(seed: int, assignments: bool = True) -> str:
    return ProgramGen(seed, assignments).program()
