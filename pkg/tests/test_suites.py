import pytest

from treebergman.suites import FIELDS, SUITE_NAMES, run_suite
from treebergman.tree import Params


@pytest.fixture(scope="module")
def all_rows():
    return run_suite("all", Params(), 0)


def test_all_pass_at_defaults(all_rows):
    failed = [r.check_id for r in all_rows if not r.passed]
    assert failed == []


def test_rows_sorted_and_cover_every_suite(all_rows):
    ids = [r.check_id for r in all_rows]
    assert ids == sorted(ids)
    prefixes = {i.split(".")[0] for i in ids}
    assert prefixes == set(SUITE_NAMES) - {"all"}
    assert all(len(r.row()) == len(FIELDS) for r in all_rows)


def test_deterministic_and_independent_of_composition(all_rows):
    again = run_suite("cz", Params(), 0)
    assert again == [r for r in all_rows if r.check_id.startswith("cz.")]


def test_seed_changes_sampled_rows():
    a = run_suite("kernel", Params(), 0)
    b = run_suite("kernel", Params(), 1)
    assert [r.check_id for r in a] == [r.check_id for r in b]
    assert [r.got for r in a] != [r.got for r in b]


def test_kernel_suite_other_params():
    rows = run_suite("kernel", Params(q=3, alpha=1.5), 0)
    assert all(r.passed for r in rows)


def test_orthonormality_suite():
    rows = run_suite("orthonormality", Params(), 0)
    assert all(r.passed for r in rows) and rows[0].expected == 1e-10


def test_unknown_suite():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite("nope", Params())
