"""Regenerates the DEM fixtures in this directory (requires `pip install stim`).

Each .dem file is paired with a .json file in the native problem format,
built from stim's own flattened model so the C++ parser can be checked
against an independent reader.
"""
import json
import pathlib

import stim

HERE = pathlib.Path(__file__).parent


def to_problem(dem: stim.DetectorErrorModel) -> dict:
    mechanisms = []
    for inst in dem.flattened():
        if inst.type != "error":
            continue
        dets, obs = set(), set()
        for t in inst.targets_copy():
            if t.is_relative_detector_id():
                dets ^= {t.val}
            elif t.is_logical_observable_id():
                obs ^= {t.val}
        if not dets and not obs:
            continue
        mechanisms.append({"p": inst.args_copy()[0],
                           "detectors": sorted(dets),
                           "observables": sorted(obs)})
    return {"num_detectors": dem.num_detectors,
            "num_observables": dem.num_observables,
            "mechanisms": mechanisms}


def emit(name: str, circuit: stim.Circuit) -> None:
    dem = circuit.detector_error_model(decompose_errors=True)
    (HERE / f"{name}.dem").write_text(str(dem))
    (HERE / f"{name}.json").write_text(json.dumps(to_problem(dem), indent=1))


emit("rep_d5_r5_p01", stim.Circuit.generated(
    "repetition_code:memory", distance=5, rounds=5,
    after_clifford_depolarization=0.01,
    before_measure_flip_probability=0.01,
    after_reset_flip_probability=0.01))
emit("surface_d3_r3_p003", stim.Circuit.generated(
    "surface_code:rotated_memory_z", distance=3, rounds=3,
    after_clifford_depolarization=0.003,
    before_measure_flip_probability=0.003,
    after_reset_flip_probability=0.003,
    before_round_data_depolarization=0.003))
