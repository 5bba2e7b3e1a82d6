import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from neurotrace.errors import ParseError
from neurotrace.nn.types import Metrics
from neurotrace.trace import (
    ActivationsComputed,
    BackwardPulse,
    EpochEnd,
    EpochStart,
    ForwardPulse,
    LossComputed,
    OutputProduced,
    WeightsUpdated,
    deserialize_event,
    read_trace,
    serialize_event,
    write_trace,
)

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


def sample_events():
    return [
        EpochStart(seq=0, epoch=0),
        ForwardPulse(seq=1, epoch=0, from_layer=0, to_layer=1, edge_weights=[[0.5, -1.25]]),
        ActivationsComputed(seq=2, epoch=0, layer=1, values=[0.5]),
        OutputProduced(seq=3, epoch=0, values=[0.25, 0.75]),
        LossComputed(seq=4, epoch=0, loss=0.0),
        BackwardPulse(seq=5, epoch=0, into_layer=1, deltas=[-0.1]),
        WeightsUpdated(
            seq=6,
            epoch=0,
            layer=1,
            w_pre=[[0.5, -1.25]],
            w_post=[[0.45, -1.2]],
            b_pre=[0.0],
            b_post=[0.05],
            d_w=[[0.5, -0.5]],
            d_b=[-0.5],
            lr=0.1,
        ),
        EpochEnd(seq=7, epoch=0, metrics=Metrics(loss=0.5, accuracy=0.9)),
        EpochEnd(seq=8, epoch=1, metrics=Metrics(loss=0.25)),
    ]


@pytest.mark.parametrize("event", sample_events(), ids=lambda e: f"{e.type}-{e.seq}")
def test_round_trip_identity(event):
    assert deserialize_event(serialize_event(event)) == event


def test_type_tag_is_screaming_snake_and_first():
    line = serialize_event(EpochStart(seq=3, epoch=1))
    assert line.startswith('{"type":"EPOCH_START"')


def test_zero_loss_serializes_as_explicit_numeric_zero():
    line = serialize_event(LossComputed(seq=0, epoch=0, loss=0.0))
    assert '"loss":0.0' in line


def test_optional_metrics_fields_are_omitted():
    line = serialize_event(EpochEnd(seq=0, epoch=0, metrics=Metrics(loss=1.0)))
    assert "accuracy" not in line and "val_loss" not in line


def test_unknown_variant_tag_rejected():
    with pytest.raises(ParseError):
        deserialize_event('{"type":"SNAPSHOT","seq":0}')


def test_malformed_json_carries_line_number():
    with pytest.raises(ParseError) as err:
        deserialize_event("{oops", line_number=17)
    assert err.value.line_number == 17


def test_missing_fields_rejected():
    with pytest.raises(ParseError):
        deserialize_event('{"type":"LOSS_COMPUTED","seq":0}')


def test_non_object_line_rejected():
    with pytest.raises(ParseError):
        deserialize_event("[1,2,3]")


def test_write_then_read_trace(tmp_path):
    events = sample_events()
    path = tmp_path / "trace.jsonl"
    write_trace(path, events)
    assert read_trace(path) == events
    content = path.read_text()
    assert content.endswith("\n")
    assert len(content.splitlines()) == len(events)


def test_read_trace_reports_bad_line_number(tmp_path):
    path = tmp_path / "broken.jsonl"
    lines = [serialize_event(e) for e in sample_events()[:3]]
    lines.insert(2, "not json")
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(ParseError) as err:
        read_trace(path)
    assert err.value.line_number == 3


@given(
    seq=st.integers(0, 2**63 - 1),
    epoch=st.integers(0, 2**31 - 1),
    loss=finite,
    values=st.lists(finite, min_size=1, max_size=6),
)
@settings(max_examples=100, deadline=None)
def test_round_trip_survives_any_finite_payload(seq, epoch, loss, values):
    for event in (
        LossComputed(seq=seq, epoch=epoch, loss=loss),
        OutputProduced(seq=seq, epoch=epoch, values=values),
    ):
        again = deserialize_event(serialize_event(event))
        assert again == event


def test_float_payloads_round_trip_exactly():
    # repr-exact floats: a third survives serialization bit-for-bit
    third = 1.0 / 3.0
    event = LossComputed(seq=0, epoch=0, loss=third)
    assert deserialize_event(serialize_event(event)).loss == third


def test_serialized_line_is_single_compact_json():
    line = serialize_event(sample_events()[6])
    assert "\n" not in line and " " not in line.split('"w_pre"')[0]
    json.loads(line)
