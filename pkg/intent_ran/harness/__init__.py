# SPDX-License-Identifier: MIT

"""
Harness package: experiment configuration, the decomposition pipeline,
experiment and benchmark runners, and the command line.

An experiment configuration is a TOML file with the sections
`[scenario]`, `[hyperparams]`, `[reward]`, `[experiment]`,
`[decomposition]` and `[[conflict_rules.rule]]`; missing sections take
their defaults. Two profiles ship with the package: `desk.toml` (4 BSs,
32 UEs, 200 episodes of 100 steps) and `paper.toml` (40 BSs, 320 UEs,
1000-step episodes).
"""

import os

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from intent_ran.ontology.exceptions import ConflictRuleError
from intent_ran.ontology.knowledge import load_conflict_rules
from intent_ran.ontology.model import ConflictRule
from intent_ran.optimizer import Hyperparams, RewardConfig
from intent_ran.ransim import ScenarioConfig
from intent_ran.ransim.exceptions import ConfigError
from intent_ran.sig import DecompositionConfig
from intent_ran.util import Utility

DESK_PROFILE = "desk.toml"
PAPER_PROFILE = "paper.toml"
INTENT_FILE = "energy_saving_intent.yaml"
SIG_FILE = "energy_saving_sig.json"


class Scheme(str, Enum):
    """The schemes an experiment can run."""

    DQN = "dqn"
    DQN_NO_CONFLICT = "dqn_no_conflict"
    Q_LEARNING = "q_learning"
    STATIC = "static"


class ExperimentSettings(BaseModel):
    """
    A class for the `[experiment]` section: inputs, seeds, episodes and
    the sizes of the simulate and bench runs.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    intent_path: str | None = None
    sig_model_path: str | None = None
    seeds: tuple[int, ...] = Field((0,), min_length=1)
    episodes: int = Field(200, ge=0)
    output_dir: str | None = None
    simulate_steps: int = Field(100, ge=1)
    bench_num_bs: tuple[int, ...] = Field((5, 10, 20, 40), min_length=1)
    bench_repetitions: int = Field(5, ge=1)
    bench_warmup: int = Field(1, ge=0)
    schemes: tuple[Scheme, ...] = tuple(Scheme)

    @property
    def intent(self) -> str:
        """Intent file, the packaged reference intent by default"""
        return self.intent_path or Utility.data_path(INTENT_FILE)

    @property
    def sig_model(self) -> str:
        """SIG model file, the packaged reference model by default"""
        return self.sig_model_path or Utility.data_path(SIG_FILE)


class ExperimentConfig(BaseModel):
    """A class for a whole experiment configuration."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    scenario: ScenarioConfig = ScenarioConfig()
    hyperparams: Hyperparams = Hyperparams()
    reward: RewardConfig = RewardConfig()
    experiment: ExperimentSettings = ExperimentSettings()
    decomposition: DecompositionConfig = DecompositionConfig()
    conflict_rules: dict[str, list[dict]] | None = None

    @classmethod
    def from_dict(cls, data: dict, source: str | None = None) -> "ExperimentConfig":
        """Validate a decoded configuration, raising ConfigError on failure"""
        try:
            config = cls.model_validate(data)
        except ValidationError as exc:
            details = "; ".join(
                f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}"
                for err in exc.errors()
            )
            raise ConfigError(f"Invalid configuration: {details}", source) from exc
        config.rules()
        return config

    @classmethod
    def from_toml(cls, path: str) -> "ExperimentConfig":
        """Read a TOML configuration file"""
        try:
            with open(path, "rb") as f:
                data = tomllib.load(f)
        except FileNotFoundError as exc:
            raise ConfigError(f"No configuration file {path}", path) from exc
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"Malformed TOML: {exc}", path) from exc
        return cls.from_dict(data, path)

    def rules(self) -> tuple[ConflictRule, ...]:
        """Configured conflict rules, or the defaults when the section is absent"""
        tables = None if self.conflict_rules is None else self.conflict_rules.get("rule", [])
        try:
            return load_conflict_rules(tables)
        except ConflictRuleError as exc:
            raise ConfigError(exc.message, "conflict_rules") from exc

    def with_seed(self, seed: int) -> "ExperimentConfig":
        """Copy whose scenario uses another seed"""
        return self.model_copy(update={"scenario": self.scenario.replace(rng_seed=seed)})

    def check_paths(self):
        """Raise ConfigError if an input file is missing"""
        for path in (self.experiment.intent, self.experiment.sig_model):
            if not os.path.isfile(path):
                raise ConfigError(f"Input file {path} does not exist", path)


def load_experiment_config(
    path: str | None = None, paper_scale: bool = False
) -> ExperimentConfig:
    """A configuration file, or the packaged desk or paper profile"""
    if path is None:
        path = Utility.data_path(PAPER_PROFILE if paper_scale else DESK_PROFILE)
    return ExperimentConfig.from_toml(path)
