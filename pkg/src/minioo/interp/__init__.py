"""Reference evaluator for MiniOO."""

from __future__ import annotations

from typing import Sequence

from ..frontend.errors import ResolveError, ResolveErrors
from ..frontend.resolver import ResolvedProgram
from .machine import (
    Build,
    Cell,
    ExecError,
    ExecOutcome,
    Interpreter,
    dispatch,
)
from .values import NIL, UNIT, Cons, ObjectStore, ObjRef, Value, format_value, from_iterable, iter_list


def run_program(program: ResolvedProgram, **limits) -> ExecOutcome:
    """Execute ``main()``; raise ResolveErrors when the program has none."""
    if program.function("main", 0) is None:
        span = program.program.decls[-1].span if program.program.decls else None
        from ..frontend.ast import Span

        raise ResolveErrors([ResolveError("program has no main() function", span or Span("<input>", 1, 1))])
    return evaluate_function(program, "main", [], **limits)


def evaluate_function(program: ResolvedProgram, name: str, args: Sequence[object] = (), **limits) -> ExecOutcome:
    """Evaluate ``name(*args)`` in a fresh interpreter.

    ``args`` may mix plain values with :class:`Build` markers, which are
    constructed inside the same object store before the call.
    """
    interp = Interpreter(program, **limits)
    return outcome_of(interp, lambda: interp.call_function(name, list(args)))


def outcome_of(interp: Interpreter, thunk) -> ExecOutcome:
    try:
        result = thunk()
    except ExecError as err:
        result = err
    return ExecOutcome(result, list(interp.output), list(interp.assertions_failed))


__all__ = [
    "Build", "Cell", "Cons", "ExecError", "ExecOutcome", "Interpreter", "NIL", "ObjRef",
    "ObjectStore", "UNIT", "Value", "dispatch", "evaluate_function", "format_value",
    "from_iterable", "iter_list", "outcome_of", "run_program",
]
