"""Runtime values.

Ints and bools are plain Python ``int``/``bool`` (kept apart with
``type(v) is ...`` checks), lists are persistent cons cells, objects are
:class:`ObjRef` handles into an :class:`ObjectStore`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

INT_BITS = 64
_MOD = 1 << INT_BITS
_HALF = 1 << (INT_BITS - 1)


def wrap(n: int) -> int:
    """Two's-complement wrap to 64 bits."""
    return ((n + _HALF) % _MOD) - _HALF


class _Unit:
    __slots__ = ()

    def __repr__(self) -> str:
        return "()"


UNIT = _Unit()


class _Nil:
    __slots__ = ()

    def __repr__(self) -> str:
        return "nil"

    def __iter__(self):
        return iter(())


NIL = _Nil()


@dataclass(frozen=True)
class Cons:
    head: "Value"
    tail: "PList"

    def __iter__(self) -> Iterator["Value"]:
        return iter_list(self)


PList = Union[_Nil, Cons]


@dataclass(frozen=True)
class ObjRef:
    id: int
    readonly: bool = field(default=False, compare=False)

    def view(self, readonly: bool) -> "ObjRef":
        return self if self.readonly == readonly else ObjRef(self.id, readonly)


Value = Union[int, bool, _Unit, _Nil, Cons, ObjRef]


class _Uninit:
    __slots__ = ()

    def __repr__(self) -> str:
        return "<uninitialized>"


UNINIT = _Uninit()


@dataclass
class Obj:
    cls: str
    fields: dict[str, object]


class ObjectStore:
    def __init__(self) -> None:
        self.objects: dict[int, Obj] = {}

    def alloc(self, cls: str, fields: dict[str, object]) -> ObjRef:
        ref = ObjRef(len(self.objects) + 1)
        self.objects[ref.id] = Obj(cls, fields)
        return ref

    def __getitem__(self, ref: ObjRef) -> Obj:
        return self.objects[ref.id]

    def class_of(self, ref: ObjRef) -> str:
        return self.objects[ref.id].cls


def iter_list(xs: PList) -> Iterator[Value]:
    while isinstance(xs, Cons):
        yield xs.head
        xs = xs.tail


def from_iterable(items: Iterable[Value]) -> PList:
    out: PList = NIL
    for v in reversed(list(items)):
        out = Cons(v, out)
    return out


def kind_of(v: object) -> str:
    if type(v) is bool:
        return "bool"
    if type(v) is int:
        return "int"
    if v is UNIT:
        return "unit"
    if v is NIL or isinstance(v, Cons):
        return "list"
    if isinstance(v, ObjRef):
        return "object"
    if isinstance(v, str):
        return "string"
    return "?"


def values_equal(a: Value, b: Value) -> bool:
    if kind_of(a) != kind_of(b):
        return False
    if isinstance(a, Cons):
        xs, ys = list(iter_list(a)), list(iter_list(b))
        return len(xs) == len(ys) and all(values_equal(x, y) for x, y in zip(xs, ys))
    return a == b


def format_value(v: object, store: ObjectStore | None = None) -> str:
    if type(v) is bool:
        return "true" if v else "false"
    if type(v) is int:
        return str(v)
    if v is UNIT:
        return "()"
    if v is NIL or isinstance(v, Cons):
        return "[" + " ".join(format_value(x, store) for x in iter_list(v)) + "]"
    if isinstance(v, ObjRef):
        if store is not None and v.id in store.objects:
            return f"<{store.class_of(v)}>"
        return "<object>"
    if isinstance(v, str):
        return v
    return repr(v)


def snapshot(v: object, store: ObjectStore) -> object:
    """Hashable structural image of ``v`` and everything reachable from it.

    Object identities are replaced by first-visit numbers, so two snapshots
    compare equal exactly when the reachable state has the same shape.
    """
    numbering: dict[int, int] = {}

    def go(x: object) -> object:
        if isinstance(x, ObjRef):
            if x.id in numbering:
                return ("ref", numbering[x.id])
            numbering[x.id] = len(numbering)
            obj = store[x]
            return (
                "obj",
                numbering[x.id],
                obj.cls,
                tuple((k, go(obj.fields[k])) for k in sorted(obj.fields)),
            )
        if isinstance(x, Cons):
            return ("list", tuple(go(y) for y in iter_list(x)))
        if x is NIL:
            return ("list", ())
        return (kind_of(x), repr(x) if x is UNINIT else x)

    return go(v)
