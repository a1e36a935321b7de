from fractions import Fraction

from hypothesis import strategies as st

from ginv.exactcore import Matrix, Scalar

small_fraction = st.builds(
    Fraction,
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=1, max_value=3),
)

gaussian = st.builds(Scalar, small_fraction, st.one_of(st.just(0), small_fraction))


def square_matrices(max_dim=4, complex_entries=True, min_dim=1):
    entry = gaussian if complex_entries else small_fraction
    return st.integers(min_value=min_dim, max_value=max_dim).flatmap(
        lambda n: st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n).map(Matrix)
    )


def M(rows):
    return Matrix(rows)


# acceptance criterion -> list of (passed, detail); printed after the run
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def record(criterion: int, passed: bool, detail: str) -> None:
    ACCEPTANCE.setdefault(criterion, []).append((passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[n]
        status = "PASS" if all(ok for ok, _ in parts) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  " + "; ".join(d for _, d in parts))
