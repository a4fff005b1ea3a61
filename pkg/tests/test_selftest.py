from tlsum import selftest as st
from tlsum.cli import main
from tlsum.objectives import ModularObjective


def test_quick_battery_passes():
    report = st.run_selftest(seed=0, quick=True)
    assert report.passed
    names = " ".join(r.name for r in report.results)
    assert "monotone+submodular" in names
    assert "downward closure" in names
    assert "base ratio" in names
    assert "greedy guarantee" in names
    assert "lazy == naive" in names
    assert all(line for line in report.lines())


class _Supermodular:
    name = "broken"

    def value(self, selected):
        return float(len(selected) ** 2)

    def marginal(self, selected, candidate):
        return self.value(set(selected) | {candidate}) - self.value(selected)


def test_injected_broken_objective_fails_battery(monkeypatch):
    original = st.build_components

    def sabotaged(seed, n=12):
        components = original(seed, n)
        components["coverage"] = _Supermodular()
        return components

    monkeypatch.setattr(st, "build_components", sabotaged)
    results = st.check_components(seed=0, instances=2, trials_per_instance=100)
    coverage = [r for r in results if r.name.endswith(" coverage")]
    assert coverage and not coverage[0].passed


def test_selftest_cli_exit_code_two_on_failure(monkeypatch):
    def failing(seed=0, quick=False):
        return st.SelfTestReport(results=(
            st.CheckResult(name="x", passed=False, details="boom", elapsed=0.0),))

    import tlsum.cli as cli
    monkeypatch.setattr(cli, "run_selftest", failing)
    assert main(["selftest"]) == 2


def test_component_instances_are_deterministic():
    a = st.build_components(3)
    b = st.build_components(3)
    for name in st.COMPONENT_NAMES:
        assert a[name].value(frozenset({0, 3, 5})) == b[name].value(frozenset({0, 3, 5}))


def test_guarantee_instance_objectives_normalized():
    for seed in range(10):
        label, universe, objective, constraint = st.guarantee_instance(seed, k=2)
        full = frozenset(universe)
        if not isinstance(objective, ModularObjective):
            assert objective.value(full) <= len(objective.components) + 1e-9
        assert objective.value(frozenset()) == 0.0
