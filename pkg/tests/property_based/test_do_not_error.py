import hypothesis.strategies as st
from hypothesis import HealthCheck, given, settings

from rectipoly import constructions
from rectipoly.nets import refold, unfold
from rectipoly.report import analyze
from tests.property_based.hypothesis_helper import deadline, prism_lengths, slow_max_examples, strategies


@settings(max_examples=slow_max_examples, deadline=deadline, suppress_health_check=list(HealthCheck))
@given(L=prism_lengths, strategy=strategies, root=st.integers(min_value=0, max_value=41))  # pylint: disable=no-value-for-parameter
def test_octopus_nets_fold_back(L, strategy, root):
    octopus = constructions.make_octopus(L)
    net = unfold(octopus, root_face=root, strategy=strategy)

    assert net.overlap_status().status in {"Simple", "Touching", "Overlapping"}

    _, error = refold(net, octopus)
    assert error <= 1e-8 * L


@settings(max_examples=slow_max_examples, deadline=deadline, suppress_health_check=list(HealthCheck))
@given(L=prism_lengths)  # pylint: disable=no-value-for-parameter
def test_reports_serialize(L):
    report = analyze(constructions.make_octopus_cubes(L))

    assert report.to_json()
    assert report.audit["verdict"] == "NoConstraint"
