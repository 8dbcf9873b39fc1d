import pytest

from diarisk import TrainParams, fit_gbdt, predict, training_accuracy
from diarisk.datasets import load_dataset_csv, write_dataset_csv
from diarisk.errors import DegenerateData, MalformedDocument, TooFewRows
from diarisk.model import to_document
from diarisk.train import log_loss_by_round


@pytest.fixture(scope="module")
def synth_model(synth_data):
    records, labels = synth_data
    return fit_gbdt(records, labels)


class TestFitGuards:
    def test_too_few_rows(self, synth_data):
        records, labels = synth_data
        with pytest.raises(TooFewRows):
            fit_gbdt(records[:10], labels[:10])

    def test_degenerate_single_class(self, synth_data):
        records, _ = synth_data
        with pytest.raises(DegenerateData):
            fit_gbdt(records[:30], [1] * 30)

    def test_bad_labels(self, synth_data):
        records, _ = synth_data
        with pytest.raises(ValueError):
            fit_gbdt(records[:30], [2] * 15 + [0] * 15)


class TestTraining:
    def test_zero_rounds_predicts_base_rate(self, synth_data):
        records, labels = synth_data
        ensemble = fit_gbdt(records, labels, TrainParams(rounds=0))
        assert ensemble.trees == ()
        base_rate = sum(labels) / len(labels)
        estimate = predict(ensemble, records[0])
        assert estimate.probability == pytest.approx(base_rate, abs=1e-12)

    def test_synthetic_accuracy(self, synth_model, synth_data):
        records, labels = synth_data
        assert training_accuracy(synth_model, records, labels) >= 0.95

    def test_cover_conservation_and_positivity(self, synth_model, synth_data):
        records, _ = synth_data

        def walk(node):
            assert node.cover > 0
            if node.value is None:
                assert node.cover == node.left.cover + node.right.cover
                walk(node.left)
                walk(node.right)

        for tree in synth_model.trees:
            assert tree.cover == len(records)
            walk(tree)

    def test_log_loss_non_increasing(self, synth_model, synth_data):
        records, labels = synth_data
        losses = log_loss_by_round(synth_model, records, labels)
        assert len(losses) == len(synth_model.trees) + 1
        assert all(b <= a + 1e-12 for a, b in zip(losses, losses[1:]))

    def test_repeat_fit_is_deterministic(self, synth_data):
        records, labels = synth_data
        params = TrainParams(rounds=8)
        first = fit_gbdt(records, labels, params)
        second = fit_gbdt(records, labels, params)
        assert to_document(first) == to_document(second)

    def test_leaf_values_respect_learning_rate_scaling(self, synth_data):
        # Doubling the learning rate doubles the first tree's leaf values
        # (identical gradients on round one).
        records, labels = synth_data
        slow = fit_gbdt(records, labels, TrainParams(rounds=1, learning_rate=0.1))
        fast = fit_gbdt(records, labels, TrainParams(rounds=1, learning_rate=0.2))

        def leaves(node, out):
            if node.value is not None:
                out.append(node.value)
            else:
                leaves(node.left, out)
                leaves(node.right, out)
            return out

        slow_leaves = leaves(slow.trees[0], [])
        fast_leaves = leaves(fast.trees[0], [])
        assert fast_leaves == pytest.approx([2 * v for v in slow_leaves], rel=1e-12)


class TestDatasetCsv:
    def test_round_trip(self, tmp_path, synth_data):
        records, labels = synth_data
        path = tmp_path / "data.csv"
        write_dataset_csv(path, records, labels)
        loaded_records, loaded_labels = load_dataset_csv(path)
        assert loaded_labels == labels
        assert [r.values for r in loaded_records] == [r.values for r in records]

    def test_header_must_match_schema(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,label\n1,2,0\n")
        with pytest.raises(MalformedDocument):
            load_dataset_csv(path)

    def test_label_column_required_when_asked(self, tmp_path, synth_data):
        records, _ = synth_data
        path = tmp_path / "unlabeled.csv"
        write_dataset_csv(path, records)
        with pytest.raises(MalformedDocument):
            load_dataset_csv(path, require_label=True)
        loaded, labels = load_dataset_csv(path, require_label=False)
        assert labels == []
        assert len(loaded) == len(records)

    def test_synthetic_respects_glucose_rule(self, synth_data):
        records, labels = synth_data
        for record, label in zip(records, labels):
            assert label == int(record.value("fasting_glucose") > 110.0)
