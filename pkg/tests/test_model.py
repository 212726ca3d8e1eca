from fractions import Fraction

import pytest
from hypothesis import given

from cloudprov import Cloudlet, Hosts, Scenario, ScenarioError, VirtualMachine
from cloudprov.model import fraction_to_json, to_fraction

from .conftest import scenarios


def test_build_keeps_order_and_exact_values():
    s = Scenario.build([10, "20.5"], [12, "1/3"])
    assert [vm.mips for vm in s.vms] == [10, Fraction(41, 2)]
    assert s.cloudlets[1].file_size == Fraction(1, 3)
    assert [vm.id for vm in s.vms] == [0, 1]


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"vms": []}, "vms"),
        ({"cloudlets": []}, "vms"),
        ({"vms": [{"mips": 0}]}, "vms[0].mips"),
        ({"vms": [{"mips": 10}, {"mips": -1}]}, "vms[1].mips"),
        ({"vms": [{"mips": 10}], "cloudlets": [{"file_size": 0}]}, "cloudlets[0].file_size"),
        ({"vms": [{"mips": 10}], "cloudlets": [{}]}, "cloudlets[0].file_size"),
        ({"vms": [{"id": 0, "mips": 1}, {"id": 0, "mips": 2}]}, "duplicate"),
        ({"vms": [{"mips": "fast"}]}, "vms[0].mips"),
        ({"vms": [{"mips": 10}], "hosts": {"count": 0}}, "hosts.count"),
    ],
)
def test_validation_names_field(doc, field):
    with pytest.raises(ScenarioError, match=field.replace("[", r"\[").replace("]", r"\]")):
        Scenario.from_dict(doc)


def test_empty_workload_is_valid():
    s = Scenario.from_dict({"vms": [{"mips": 5}], "cloudlets": []})
    assert s.num_cloudlets == 0


def test_direct_construction_rejects_nonpositive():
    with pytest.raises(ScenarioError):
        Cloudlet(0, Fraction(0))
    with pytest.raises(ScenarioError):
        VirtualMachine(0, Fraction(-3))


def test_hosts_metadata_round_trip():
    doc = {"vms": [{"mips": 10}], "cloudlets": [{"file_size": 12}], "hosts": {"count": 2, "ram_mb": 512}}
    s = Scenario.from_dict(doc)
    assert s.hosts == Hosts(2, Fraction(512))
    assert s.to_dict() == doc


@given(scenarios())
def test_round_trip_identity(s):
    assert Scenario.from_dict(s.to_dict()) == s


@pytest.mark.parametrize("x", [Fraction(1, 3), Fraction(41, 10), Fraction(7), Fraction(10**20 + 1, 10**20)])
def test_fraction_json_is_lossless(x):
    assert to_fraction(fraction_to_json(x), "x") == x
