import pytest
from hypothesis import HealthCheck, settings

from invgrass import Matrix, MatrixAlgebra, make_tower

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


CRITERIA = {
    1: "final example: Plucker vector, (F,G,H), no chart",
    2: "spanning generators reproduced and in the wedge span",
    3: "extension-field separation (F,G,H) = (T,F,F)",
    4: "wedge span dimension 4, chart grid == sampled (seeds 1..5)",
    5: "tangent dimensions dim_G = dim_F = lm - m",
    6: "finite-field oracle equivalence on 6 instances",
    7: "Galois collapse over Q(i)",
    8: "restricted minimal polynomial check",
    9: "constructive separating element",
    10: "property suites (Plucker relation, F in G, base change, closure laws)",
}


def pytest_terminal_summary(terminalreporter):
    outcomes = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            num = int(nodeid.split("test_criterion_")[1][:2])
            if rep.when == "call" or key != "passed":
                prev = outcomes.get(num, "PASS")
                outcomes[num] = "PASS" if key == "passed" and prev == "PASS" else "FAIL"
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        status = outcomes.get(num, "NOT RUN")
        terminalreporter.write_line(f"criterion {num:2d} [{status}] {CRITERIA[num]}")


@pytest.fixture(scope="session")
def K():
    return make_tower([("r", "x^3 - 2")])


@pytest.fixture(scope="session")
def F():
    return make_tower([("r", "x^3 - 2"), ("z", "x^2 + x + 1")])


@pytest.fixture(scope="session")
def QI():
    return make_tower([("i", "x^2 + 1")])


@pytest.fixture(scope="session")
def phi_r(K):
    r = K.gen("r")
    blk = Matrix([[0, -r], [r, -r]], K)
    return Matrix.block_diag([blk, blk])


@pytest.fixture(scope="session")
def A(phi_r):
    return MatrixAlgebra([phi_r])


@pytest.fixture(scope="session")
def wedge2(A):
    from invgrass import lambda_A_chart_grid

    return lambda_A_chart_grid(A, 2)
