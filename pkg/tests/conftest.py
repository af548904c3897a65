# SPDX-License-Identifier: MIT

"""
Pytest configuration and fixtures for the intent_ran test suite.

This module provides logging, per-test output directories, the packaged
reference documents and small scenarios that run in milliseconds.
"""

# pylint: disable=redefined-outer-name

import logging
import os

import pytest

from intent_ran.constants import OUTPUT_DIR_ENV
from intent_ran.harness import INTENT_FILE, SIG_FILE, ExperimentConfig
from intent_ran.intent.codec import parse_intent_yaml
from intent_ran.optimizer import Hyperparams
from intent_ran.ransim import ScenarioConfig
from intent_ran.sig.model import load_sig_json
from intent_ran.util import Utility

DEFAULT_TEST_DIR = "/tmp/intent-ran-tests"


@pytest.fixture(scope="session", autouse=True)
def validate_and_check_environment():
    """Make sure $INTENT_RAN_OUT points somewhere writable, with a logs directory."""
    out_dir = os.getenv(OUTPUT_DIR_ENV) or DEFAULT_TEST_DIR
    os.environ[OUTPUT_DIR_ENV] = out_dir
    os.makedirs(os.path.join(out_dir, "logs"), exist_ok=True)


# pylint: disable=unused-argument
@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """
    Hook that captures the test result for use in fixtures.
    """
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)


def _create_logger(test_name):
    """Create a logger with a file handler for the given test name.

    Shared helper used by both function-scoped and class-scoped logging
    fixtures to avoid duplicating the setup logic.
    """
    logger = logging.getLogger(test_name)
    logger.setLevel(logging.DEBUG)

    formatter = logging.Formatter(
        "%(asctime)s - %(levelname)s - %(pathname)s:%(lineno)d - %(message)s"
    )

    out_dir = os.getenv(OUTPUT_DIR_ENV) or DEFAULT_TEST_DIR
    log_file = os.path.join(out_dir, "logs", Utility.get_git_describe(), f"{test_name}.log")
    os.makedirs(os.path.dirname(log_file), exist_ok=True)
    file_handler = logging.FileHandler(log_file, mode="w")
    file_handler.setFormatter(formatter)

    if not logger.handlers:
        logger.addHandler(file_handler)

    return logger, log_file


@pytest.fixture(scope="function")
def setup_logging(request):
    """
    Configure logging for the test, including the file and line number where the log was called.
    """
    test_name = request.node.name
    logger, log_file = _create_logger(test_name)

    yield logger

    if hasattr(request.node, "rep_call") and request.node.rep_call.failed:
        logger.error("=" * 80)
        logger.error("TEST FAILED: %s", test_name)
        logger.error("=" * 80)
        logger.error("%s", request.node.rep_call.longrepr)
        logger.error("=" * 80)

        print(f"📋 Log file: {log_file}\n")

    logger.handlers.clear()


@pytest.fixture(scope="class")
def shared_setup_logging(request):
    """Class-scoped logging fixture for tests that share one expensive run."""
    test_name = request.node.name
    logger, _log_file = _create_logger(test_name)

    yield logger

    logger.handlers.clear()


@pytest.fixture
def output_dir(tmp_path) -> str:
    """A fresh output directory for the test"""
    path = tmp_path / "out"
    path.mkdir()
    return str(path)


@pytest.fixture(scope="session")
def intent_path() -> str:
    """Packaged reference intent (YAML)"""
    return Utility.data_path(INTENT_FILE)


@pytest.fixture(scope="session")
def intent_json_path() -> str:
    """Packaged JSON rendition of the reference intent"""
    return Utility.data_path("energy_saving_intent.json")


@pytest.fixture(scope="session")
def sig_path() -> str:
    """Packaged reference SIG model"""
    return Utility.data_path(SIG_FILE)


@pytest.fixture(scope="session")
def intent_yaml_text(intent_path) -> str:
    """Text of the reference intent"""
    return Utility.read_text(intent_path)


@pytest.fixture(scope="session")
def intent_doc(intent_yaml_text):
    """The reference intent, parsed"""
    return parse_intent_yaml(intent_yaml_text)


@pytest.fixture(scope="session")
def sig_model(sig_path):
    """The reference SIG model, parsed"""
    return load_sig_json(Utility.read_text(sig_path))


@pytest.fixture
def small_scenario() -> ScenarioConfig:
    """Two BSs and eight UEs, with a receiver sensitivity that keeps them attached"""
    return ScenarioConfig(num_bs=2, num_ue=8, min_rx_power_dbm=-70.0, rng_seed=7)


@pytest.fixture
def tiny_hyperparams() -> Hyperparams:
    """Short episodes and a small network"""
    return Hyperparams(
        steps_per_episode=10,
        step_duration_ms=20,
        hidden_layers=(8,),
        batch_size=4,
        target_sync_period=5,
        replay_capacity=64,
    )


@pytest.fixture
def tiny_config(small_scenario, tiny_hyperparams, output_dir) -> ExperimentConfig:
    """An experiment small enough for a unit test"""
    return ExperimentConfig(
        scenario=small_scenario,
        hyperparams=tiny_hyperparams,
        experiment={
            "seeds": (3,),
            "episodes": 2,
            "output_dir": output_dir,
            "simulate_steps": 5,
        },
    )
