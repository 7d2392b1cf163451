import dataclasses

import pytest

from pmpcruise.configio import format_config, load_config, parse_config, save_config
from pmpcruise.errors import InvalidParameter
from pmpcruise.types import FrontVehicleProfile, validate


def test_reference_file_matches_builtin_scenario(scenario, data_dir):
    parsed = load_config(data_dir / "reference.cfg")
    assert parsed == scenario


def test_round_trip_is_exact(scenario):
    assert parse_config(format_config(scenario)) == scenario


def test_round_trip_survives_awkward_floats(scenario):
    awkward = dataclasses.replace(
        scenario,
        front=FrontVehicleProfile(p0=4.0 + 1e-13, speed=0.1 + 0.2 - 0.3 + 0.1, accel=1 / 3),
    )
    assert parse_config(format_config(awkward)) == awkward


def test_unknown_key_rejected(scenario):
    text = format_config(scenario) + "plant.lag = 0.5\n"
    with pytest.raises(InvalidParameter) as exc:
        parse_config(text)
    assert exc.value.field == "plant.lag"


def test_duplicate_key_rejected(scenario):
    text = format_config(scenario) + "dt = 0.2\n"
    with pytest.raises(InvalidParameter) as exc:
        parse_config(text)
    assert "duplicate" in exc.value.reason


def test_missing_key_rejected(scenario):
    lines = [ln for ln in format_config(scenario).splitlines() if not ln.startswith("dt")]
    with pytest.raises(InvalidParameter) as exc:
        parse_config("\n".join(lines))
    assert exc.value.field == "dt"


def test_non_numeric_value_rejected(scenario):
    text = format_config(scenario).replace("dt = 0.1", "dt = fast")
    with pytest.raises(InvalidParameter) as exc:
        parse_config(text)
    assert exc.value.field == "dt"


def test_comments_and_blank_lines_ignored(scenario):
    text = "# scenario\n\n" + format_config(scenario) + "\n# trailing comment\n"
    assert parse_config(text) == scenario


def test_garbled_line_rejected():
    with pytest.raises(InvalidParameter):
        parse_config("plant.tau 0.1\n")


def test_bad_value_surfaces_field_name(data_dir):
    with pytest.raises(InvalidParameter) as exc:
        load_config(data_dir / "bad_r_zero.cfg")
    assert exc.value.field == "r"


def test_parse_does_not_check_feasibility(scenario):
    # Feasibility is validate()'s job, not the parser's.
    text = format_config(scenario).replace("x0.p = 0.0", "x0.p = 3.5")
    parsed = parse_config(text)
    from pmpcruise.errors import InfeasibleStart
    with pytest.raises(InfeasibleStart):
        validate(parsed)


def test_save_and_load(tmp_path, scenario):
    path = tmp_path / "scenario.cfg"
    save_config(scenario, path)
    assert load_config(path) == scenario
