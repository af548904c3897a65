# SPDX-License-Identifier: MIT

"""
sig_scoring.py

Tests for the SIG model, weight propagation, satisfaction and the
conflict-aware decomposition of the reference intent.
"""

import json

import numpy as np
import pytest

from intent_ran.ontology import build_knowledge_base, default_conflict_rules
from intent_ran.ontology.conflicts import detect_target_conflicts
from intent_ran.ontology.model import ConflictSet, standard_operations
from intent_ran.sig.decompose import decompose, prune_conflicting_ops
from intent_ran.sig.exceptions import (
    DimensionError,
    EmptyInputError,
    InconsistentModelError,
    SigFormatError,
    WeightRangeError,
)
from intent_ran.sig.model import SigModel, dump_sig_json, load_sig_json
from intent_ran.sig.scoring import (
    check_satisfaction,
    score_model,
    score_objectives,
    score_operations,
    score_softgoal,
)

OBJECTIVES = ("TotalEnergyConsumption", "DownlinkThroughput", "FirstPacketLatency")
LABELS = tuple(op.label for op in standard_operations())


def _document(**changes) -> str:
    data = {
        "softgoal": "EnergySavingIntent",
        "objectives": list(OBJECTIVES),
        "operations": list(LABELS),
        "sg_weights": [0.8, 0.5, 0.6],
        "op_weights": [[0.1, 0.1, 0.1]] * 5,
    }
    data.update(changes)
    return json.dumps(data)


class TestSigModel:
    """Loading and validating SIG documents."""

    @pytest.mark.sig
    def test_reference_model(self, sig_model):
        """One softgoal, three objectives, five operations."""
        assert sig_model.softgoal == "EnergySavingIntent"
        assert sig_model.objectives == OBJECTIVES
        assert sig_model.operations == LABELS
        assert sig_model.sg_weights == (0.8, 0.5, 0.6)
        assert sig_model.op_matrix.shape == (5, 3)

    @pytest.mark.sig
    def test_reload_gives_equal_model(self, sig_model):
        """Serializing and loading again yields an equal model."""
        assert load_sig_json(dump_sig_json(sig_model)) == sig_model

    @pytest.mark.sig
    def test_short_row(self):
        """A row of two weights for three objectives is a shape error."""
        rows = [[0.1, 0.1, 0.1]] * 4 + [[0.1, 0.1]]
        with pytest.raises(DimensionError) as excinfo:
            load_sig_json(_document(op_weights=rows))
        assert excinfo.value.expected == (3,)
        assert excinfo.value.actual == (2,)

    @pytest.mark.sig
    def test_missing_row(self):
        """One row per operation."""
        with pytest.raises(DimensionError):
            load_sig_json(_document(op_weights=[[0.1, 0.1, 0.1]] * 4))

    @pytest.mark.sig
    def test_weight_out_of_range(self):
        """Weights lie in [-1, 1]."""
        rows = [[0.1, 0.1, 0.1]] * 4 + [[0.1, 1.5, 0.1]]
        with pytest.raises(WeightRangeError) as excinfo:
            load_sig_json(_document(op_weights=rows))
        assert excinfo.value.index == (4, 1)
        assert excinfo.value.value == 1.5

    @pytest.mark.sig
    def test_format_errors(self):
        """Malformed JSON, missing or unknown members and unknown operations."""
        with pytest.raises(SigFormatError):
            load_sig_json("{")
        with pytest.raises(SigFormatError):
            load_sig_json(json.dumps({"softgoal": "x"}))
        with pytest.raises(SigFormatError):
            load_sig_json(_document(extra=1))
        with pytest.raises(SigFormatError):
            load_sig_json(_document(operations=["Reboot"] + list(LABELS[1:])))
        with pytest.raises(SigFormatError):
            load_sig_json(_document(sg_weights=[0.8, "high", 0.6]))


class TestScoring:
    """Weight propagation through the graph."""

    @pytest.mark.sig
    def test_reference_operation_scores(self, sig_model):
        """
        Row . sgWeights for each operation. The first operation scores 0.22,
        not the 0.42 that circulates with this model: -0.85*0.8 + 0.6*0.5 + 0.6.
        """
        scores = score_operations(sig_model)
        np.testing.assert_allclose(scores, [0.22, 0.27, 0.64, 0.335, -0.30], atol=1e-9)

    @pytest.mark.sig
    def test_reference_objective_scores(self, sig_model):
        """
        Column sums. Throughput sums to 0.05 (0.6 - 0.3 + 1.0 - 0.25 - 1.0),
        not the 0.45 that circulates with this model.
        """
        np.testing.assert_allclose(score_objectives(sig_model), [0.90, 0.05, 0.70], atol=1e-9)

    @pytest.mark.sig
    def test_softgoal_is_the_mean(self, sig_model):
        """Mean of the objective scores."""
        assert score_softgoal([0.90, 0.45, 0.70]) == pytest.approx(0.683333333, abs=1e-9)
        assert score_softgoal([0.42]) == 0.42
        assert score_model(sig_model).softgoal_score == pytest.approx(0.55, abs=1e-12)

    @pytest.mark.sig
    def test_softgoal_of_nothing(self):
        """An empty vector has no mean."""
        with pytest.raises(EmptyInputError):
            score_softgoal([])

    @pytest.mark.sig
    def test_softgoal_against_summation(self):
        """Mean agrees with a plain summation on random vectors."""
        rng = np.random.default_rng(11)
        for _ in range(100):
            values = rng.uniform(-1, 1, size=rng.integers(1, 10)).tolist()
            total = 0.0
            for value in values:
                total += value
            assert score_softgoal(values) == pytest.approx(total / len(values), abs=1e-12)

    @pytest.mark.sig
    def test_zero_weights(self):
        """All-zero weights score zero everywhere."""
        model = load_sig_json(_document(op_weights=[[0.0, 0.0, 0.0]] * 5))
        assert not score_operations(model).any()
        assert not score_objectives(model).any()

    @pytest.mark.sig
    def test_matches_double_loop(self):
        """The matrix product equals the naive double loop on random models."""
        rng = np.random.default_rng(5)
        for _ in range(50):
            sg = rng.uniform(-1, 1, 3)
            rows = rng.uniform(-1, 1, (5, 3))
            model = SigModel(
                "SG", OBJECTIVES, LABELS, tuple(sg), tuple(tuple(r) for r in rows)
            )
            expected = [sum(rows[i][j] * sg[j] for j in range(3)) for i in range(5)]
            np.testing.assert_allclose(score_operations(model), expected, atol=1e-12)

    @pytest.mark.sig
    def test_linear_in_op_weights(self, sig_model):
        """Scaling the op weights by a positive factor scales the scores."""
        scaled = sig_model.scaled(0.5)
        np.testing.assert_allclose(
            score_operations(scaled), 0.5 * score_operations(sig_model), atol=1e-12
        )
        np.testing.assert_allclose(
            score_objectives(scaled), 0.5 * score_objectives(sig_model), atol=1e-12
        )

    @pytest.mark.sig
    def test_satisfaction_boundary(self):
        """The threshold itself satisfies."""
        assert check_satisfaction(0.68, 0.5)
        assert check_satisfaction(0.5, 0.5)
        assert check_satisfaction(-3.25, -3.25)
        assert not check_satisfaction(0.4, 0.5)


class TestDecomposition:
    """Pruning and the whole decomposition."""

    @pytest.mark.sig
    def test_reference_decomposition(self, intent_doc, sig_model):
        """Four operations kept, Sleep pruned, two conflicts, satisfied."""
        ontology = build_knowledge_base(intent_doc, default_conflict_rules())
        result = decompose(intent_doc, ontology, sig_model, threshold=0.5)

        assert result.pruned_labels == LABELS[:4]
        assert len(result.conflicts) == 2
        assert result.satisfied
        report = result.to_report()
        assert report["pruned_operations"] == list(LABELS[:4])
        assert report["scores"]["operations"]["PowerDelta(-1)"] == 0.27
        assert report["scores"]["objectives"]["TotalEnergyConsumption"] == 0.9
        assert len(report["conflicts"]) == 2
        assert "Sleep" in result.render_text()

    @pytest.mark.sig
    def test_high_threshold(self, intent_doc, sig_model):
        """Satisfaction does not change what is kept."""
        ontology = build_knowledge_base(intent_doc, default_conflict_rules())
        low = decompose(intent_doc, ontology, sig_model, threshold=0.5)
        high = decompose(intent_doc, ontology, sig_model, threshold=0.9)
        assert not high.satisfied
        assert high.pruned_ops == low.pruned_ops

    @pytest.mark.sig
    def test_without_conflict_analysis(self, intent_doc, sig_model):
        """Every operation is retained and no conflicts are reported."""
        ontology = build_knowledge_base(intent_doc, default_conflict_rules())
        result = decompose(intent_doc, ontology, sig_model, conflict_analysis=False)
        assert result.pruned_labels == LABELS
        assert len(result.conflicts) == 0
        assert "analysis disabled" in result.render_text()

    @pytest.mark.sig
    def test_deterministic(self, intent_doc, sig_model):
        """Same inputs, same result."""
        ontology = build_knowledge_base(intent_doc, default_conflict_rules())
        assert decompose(intent_doc, ontology, sig_model) == decompose(
            intent_doc, ontology, sig_model
        )

    @pytest.mark.sig
    def test_mismatched_objectives(self, intent_doc):
        """The model must refine the ontology's objectives."""
        ontology = build_knowledge_base(intent_doc, default_conflict_rules())
        model = load_sig_json(
            _document(objectives=["TotalEnergyConsumption", "Coverage", "FirstPacketLatency"])
        )
        with pytest.raises(InconsistentModelError):
            decompose(intent_doc, ontology, model)

    @pytest.mark.sig
    def test_empty_conflicts_only_filter_scores(self, sig_model):
        """Without conflicts only negative scores are dropped."""
        kept = prune_conflicting_ops(sig_model, ConflictSet(), default_conflict_rules())
        assert tuple(op.label for op in kept) == LABELS[:4]

    @pytest.mark.sig
    def test_positive_scores_are_identity(self):
        """All positive and no conflicts keeps everything."""
        model = load_sig_json(_document())
        kept = prune_conflicting_ops(model, ConflictSet(), default_conflict_rules())
        assert tuple(op.label for op in kept) == LABELS

    @pytest.mark.sig
    def test_harm_threshold(self, intent_doc, sig_model):
        """
        With a harm threshold, operations that hurt the dominant objective of
        a conflict go too: energy dominates throughput, latency dominates
        throughput, and the first and third operations hurt energy.
        """
        conflicts = detect_target_conflicts(intent_doc)
        kept = prune_conflicting_ops(
            sig_model, conflicts, default_conflict_rules(), harm_threshold=-0.5
        )
        assert tuple(op.label for op in kept) == ("PowerDelta(-1)", "AntennaAngleSet(15)")

    @pytest.mark.sig
    def test_adding_positive_operation_keeps_the_rest(self):
        """Pruning is monotone: a positively scored newcomer removes nothing."""
        rows = [[0.5, -0.2, 0.1], [-0.9, -0.9, -0.9], [0.2, 0.2, 0.2], [0.3, 0.0, 0.0]]
        smaller = SigModel("SG", OBJECTIVES, LABELS[:4], (0.8, 0.5, 0.6), tuple(map(tuple, rows)))
        larger = SigModel(
            "SG",
            OBJECTIVES,
            LABELS,
            (0.8, 0.5, 0.6),
            tuple(map(tuple, rows + [[0.4, 0.4, 0.4]])),
        )
        before = {op.label for op in prune_conflicting_ops(smaller, ConflictSet(), ())}
        after = {op.label for op in prune_conflicting_ops(larger, ConflictSet(), ())}
        assert before <= after
        assert "Sleep" in after
