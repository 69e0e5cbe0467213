from pathlib import Path

import pytest

from termfix.events import read_events_file
from termfix.sessions import build_sessions
from termfix.simulator import SimConfig, generate
from termfix.textnorm import default_config

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def norm_cfg():
    return default_config()


@pytest.fixture(scope="session")
def default_sim():
    """The default simulated corpus (seed 7, 1000 sessions), built once."""
    cfg = SimConfig()
    events, truth = generate(cfg)
    corpus = build_sessions(events, default_config())
    return cfg, events, truth, corpus


@pytest.fixture(scope="session")
def small_sim():
    """A 50-session corpus for oracle comparisons."""
    cfg = SimConfig(seed=17, n_sessions=50)
    events, truth = generate(cfg)
    corpus = build_sessions(events, default_config())
    return cfg, events, truth, corpus


@pytest.fixture()
def golden_events():
    return list(read_events_file(FIXTURES / "golden_session.jsonl"))


@pytest.fixture()
def golden_session(norm_cfg, golden_events):
    corpus = build_sessions(golden_events, norm_cfg)
    return corpus.sessions[0]
