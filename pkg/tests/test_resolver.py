from __future__ import annotations

import pytest

from minioo.frontend import ResolveErrors, parse_source, resolve
from minioo.frontend import ast

from conftest import corpus_program


def resolve_src(src):
    return resolve(parse_source(src, "t.moo"))


def errors_of(src):
    with pytest.raises(ResolveErrors) as info:
        resolve_src(src)
    return [str(e) for e in info.value.errors]


def test_merge_into_put_site_is_virtual():
    rp = corpus_program("cbag.moo", "cset.moo")
    merge_into = rp.function("merge_into", 2)
    sites = [e for e in ast.body_exprs(merge_into.body) if isinstance(e, ast.MethodCall) and e.name == "put"]
    assert len(sites) == 1
    assert sites[0].virtual is True and sites[0].receiver_class == "CBag"


def test_size_site_is_static():
    rp = corpus_program("cbag.moo", "cset.moo")
    c_put_grows = rp.function("c_put_grows", 1)
    sites = [e for e in ast.body_exprs(c_put_grows.body) if isinstance(e, ast.MethodCall) and e.name == "size"]
    assert sites and all(s.virtual is False for s in sites)


def test_override_inherits_virtualness_of_its_family():
    rp = corpus_program("cbag.moo", "cset.moo")
    assert rp.is_virtual("CSet", "put")
    assert not rp.is_virtual("CSet", "memberof")
    assert [c for c, _ in rp.dispatch_targets("CBag", "put")] == ["CBag", "CSet"]


def test_super_call_is_static():
    rp = corpus_program("cbag.moo", "cset.moo")
    put = rp.own_method("CSet", "put")
    sup = [e for e in ast.body_exprs(put.body) if isinstance(e, ast.MethodCall) and e.name == "put"]
    assert sup[0].virtual is False and sup[0].owner == "CBag"


def test_friends_read_private_fields():
    rp = corpus_program("fbag.moo", "fset.moo")
    assert rp.friends_of["put"] == {"FBag"}
    assert rp.hierarchy == {"FBag": None, "FSet": "FBag"}


def test_self_inheritance_is_a_cycle():
    assert any("cycl" in e for e in errors_of("class X : X {}"))


def test_longer_cycle():
    assert any("cycl" in e for e in errors_of("class A : B {}\nclass B : A {}"))


def test_unknown_base():
    assert any("Nope" in e for e in errors_of("class A : Nope {}"))


def test_private_field_outside_class_and_friends():
    errs = errors_of("""
        class A {
          private:
            int secret;
          A() : secret(1) {}
          friend ok;
        }
        int ok(A a) { return a.secret; }
        int bad(A a) { return a.secret; }
    """)
    assert len(errs) == 1 and "t.moo:9:" in errs[0] and "private" in errs[0]


def test_unbound_names_are_all_reported_in_order():
    errs = errors_of("int f() { return x + g(y); }")
    assert len(errs) == 3
    assert "'x'" in errs[0] and "'g'" in errs[1] and "'y'" in errs[2]


def test_duplicate_definitions():
    assert errors_of("class A {}\nclass A {}")
    assert errors_of("int f() { return 1; }\nint f() { return 2; }")
    assert errors_of("class A {\n public:\n int x;\n int x;\n}")
    assert errors_of("int f(int a, int a) { return a; }")


def test_let_names_cannot_be_rebound():
    assert errors_of("int f() { let a = 1; let a = 2; return a; }")


def test_override_must_keep_the_signature():
    errs = errors_of("""
        class A { public: virtual int m(int x) { return x; } }
        class B : A { public: int m(bool x) { return 1; } }
    """)
    assert any("override" in e for e in errs)


def test_type_errors():
    assert errors_of("int f() { return true; }")
    assert errors_of("int f() { let x = 1 + nil; return x; }")
    assert errors_of('int f() { let s = "text"; return 1; }')


def test_constructor_overloads_are_picked_by_argument_type():
    rp = resolve_src("""
        class A {
          public:
            int tag;
          A(int n) : tag(1) {}
          A(list xs) : tag(2) {}
        }
        A f() { return new A(nil); }
    """)
    ret = rp.function("f", 0).body[0].value
    assert ret.ctor_index == 1


def test_functions_overload_by_arity():
    rp = resolve_src("int f() { return f(1); }\nint f(int x) { return x; }")
    assert set(rp.functions["f"]) == {0, 1}
    assert rp.function_id(rp.function("f", 1)) == "f(int)"


def test_main_must_take_no_arguments():
    assert errors_of("int main(int x) { return x; }")


def test_resolution_is_deterministic():
    src = "int f() { return x + y; }\nclass Z : Q {}"
    assert errors_of(src) == errors_of(src)
