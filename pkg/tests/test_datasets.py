"""Corpus loading, format converters, and rationale alignment."""

import json

import pytest

from helpers import SubwordStubModel
from xaibench.datasets import (
    align_rationale,
    convert_hatexplain,
    convert_movies_eraser,
    load_corpus_jsonl,
    save_corpus_jsonl,
)
from xaibench.datasets.corpus import RationaleInstance
from xaibench.errors import DataError


def write_jsonl(path, records):
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n", encoding="utf-8")


def record(i, words, rationale, label="pos", index=1, split="train"):
    return {
        "id": f"r{i}",
        "words": words,
        "label_name": label,
        "label_index": index,
        "rationale": rationale,
        "split": split,
    }


class TestLoadCorpus:
    def test_average_rationale_length(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_jsonl(
            path,
            [
                record(0, ["a", "b", "c", "d"], [1, 1, 0, 0]),
                record(1, ["a", "b", "c", "d"], [1, 1, 1, 1]),
            ],
        )
        corpus = load_corpus_jsonl(path)
        assert corpus.avg_rationale_len == 3

    def test_round_half_up(self, tmp_path):
        path = tmp_path / "c.jsonl"
        # sizes 1 and 2 -> mean 1.5 -> rounds up to 2
        write_jsonl(
            path,
            [
                record(0, ["a", "b"], [1, 0]),
                record(1, ["a", "b"], [1, 1]),
            ],
        )
        assert load_corpus_jsonl(path).avg_rationale_len == 2

    def test_all_empty_rationales_floor_one(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_jsonl(path, [record(0, ["a"], [0]), record(1, ["b"], [0])])
        assert load_corpus_jsonl(path).avg_rationale_len == 1

    def test_length_mismatch_names_instance(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_jsonl(path, [record(7, ["a", "b"], [1])])
        with pytest.raises(DataError, match="r7"):
            load_corpus_jsonl(path)

    def test_bad_json_names_line(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"id": "x"}\nnot json\n', encoding="utf-8")
        with pytest.raises(DataError, match=":1"):
            load_corpus_jsonl(path)

    def test_missing_field_reported(self, tmp_path):
        path = tmp_path / "c.jsonl"
        bad = record(0, ["a"], [0])
        del bad["label_name"]
        write_jsonl(path, [bad])
        with pytest.raises(DataError, match="label_name"):
            load_corpus_jsonl(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            load_corpus_jsonl(tmp_path / "absent.jsonl")

    def test_save_load_round_trip(self, tmp_path):
        instances = [
            RationaleInstance(
                id="a",
                words=("x", "y"),
                label_name="neg",
                label_index=0,
                word_rationale=(0, 1),
                split="test",
            )
        ]
        path = tmp_path / "c.jsonl"
        save_corpus_jsonl(instances, path)
        corpus = load_corpus_jsonl(path)
        assert corpus.instances == tuple(instances)


def hatexplain_record(post_id, tokens, labels, rationales):
    return {
        "post_id": post_id,
        "annotators": [
            {"label": lab, "annotator_id": i, "target": ["None"]}
            for i, lab in enumerate(labels)
        ],
        "rationales": rationales,
        "post_tokens": tokens,
    }


class TestHateXplain:
    def test_majority_and_skip(self, tmp_path):
        raw = {
            "p1": hatexplain_record(
                "p1", ["you", "people", "stink"],
                ["hatespeech", "hatespeech", "normal"],
                [[0, 1, 1], [0, 0, 1]],
            ),
            "p2": hatexplain_record(
                "p2", ["meh"], ["hatespeech", "offensive", "normal"], []
            ),
            "p3": hatexplain_record(
                "p3", ["fine", "day"], ["normal", "normal", "normal"], []
            ),
        }
        raw_path = tmp_path / "hx.json"
        raw_path.write_text(json.dumps(raw), encoding="utf-8")
        corpus = convert_hatexplain(raw_path, tmp_path / "hx.jsonl")
        ids = [inst.id for inst in corpus.instances]
        assert ids == ["p1", "p3"]  # p2 undecided
        assert corpus.instances[0].label_name == "hateful"
        assert corpus.instances[1].label_name == "normal"
        assert corpus.instances[1].word_rationale == (0, 0)

    def test_rationale_majority_threshold(self, tmp_path):
        # 2 annotators, token marked by 1 of 2: ceil(2/2)=1 -> marked
        raw = {
            "p": hatexplain_record(
                "p", ["a", "b", "c", "d"],
                ["offensive", "offensive"],
                [[0, 0, 0, 1], [0, 1, 0, 0]],
            )
        }
        raw_path = tmp_path / "hx.json"
        raw_path.write_text(json.dumps(raw), encoding="utf-8")
        corpus = convert_hatexplain(raw_path, tmp_path / "hx.jsonl")
        assert corpus.instances[0].word_rationale == (0, 1, 0, 1)

    def test_union_vs_majority_mode(self, tmp_path):
        raw = {
            "p": hatexplain_record(
                "p", ["a", "b", "c"],
                ["hatespeech", "hatespeech", "hatespeech"],
                [[1, 0, 0], [0, 1, 0], [0, 1, 0]],
            )
        }
        raw_path = tmp_path / "hx.json"
        raw_path.write_text(json.dumps(raw), encoding="utf-8")
        majority = convert_hatexplain(raw_path, tmp_path / "m.jsonl")
        union = convert_hatexplain(raw_path, tmp_path / "u.jsonl", rationale_mode="union")
        assert majority.instances[0].word_rationale == (0, 1, 0)  # needs 2 of 3
        assert union.instances[0].word_rationale == (1, 1, 0)

    def test_split_assignment(self, tmp_path):
        raw = {
            "p1": hatexplain_record("p1", ["x"], ["normal"] * 3, []),
            "p2": hatexplain_record("p2", ["y"], ["normal"] * 3, []),
        }
        (tmp_path / "hx.json").write_text(json.dumps(raw), encoding="utf-8")
        splits = {"train": ["p1"], "test": ["p2"]}
        (tmp_path / "splits.json").write_text(json.dumps(splits), encoding="utf-8")
        corpus = convert_hatexplain(
            tmp_path / "hx.json", tmp_path / "hx.jsonl", splits_path=tmp_path / "splits.json"
        )
        assert {i.id: i.split for i in corpus.instances} == {
            "p1": "train",
            "p2": "test",
        }

    def test_missing_field(self, tmp_path):
        (tmp_path / "hx.json").write_text(json.dumps({"p": {"post_id": "p"}}))
        with pytest.raises(DataError):
            convert_hatexplain(tmp_path / "hx.json", tmp_path / "out.jsonl")

    def test_round_trip_counts(self, tmp_path):
        raw = {
            f"p{i}": hatexplain_record(
                f"p{i}", ["w1", "w2", "w3"],
                ["offensive", "offensive", "normal"],
                [[1, 0, 1], [1, 0, 0]],
            )
            for i in range(5)
        }
        (tmp_path / "hx.json").write_text(json.dumps(raw), encoding="utf-8")
        converted = convert_hatexplain(tmp_path / "hx.json", tmp_path / "hx.jsonl")
        reloaded = load_corpus_jsonl(tmp_path / "hx.jsonl")
        assert len(reloaded.instances) == len(converted.instances) == 5
        for a, b in zip(converted.instances, reloaded.instances):
            assert a.label_name == b.label_name
            assert sum(a.word_rationale) == sum(b.word_rationale)


class TestMoviesEraser:
    def make_fixture(self, tmp_path):
        docs = tmp_path / "docs"
        docs.mkdir()
        (docs / "posR_000.txt").write_text(
            "one two three four five six seven eight nine ten", encoding="utf-8"
        )
        (docs / "negR_001.txt").write_text("bad movie overall", encoding="utf-8")
        annotations = tmp_path / "val.jsonl"
        lines = [
            {
                "annotation_id": "posR_000.txt",
                "classification": "POS",
                "evidences": [[
                    {"docid": "posR_000.txt", "start_token": 2, "end_token": 5, "text": "three four five"},
                    {"docid": "posR_000.txt", "start_token": 4, "end_token": 6, "text": "five six"},
                ]],
            },
            {
                "annotation_id": "negR_001.txt",
                "classification": "NEG",
                "evidences": [],
            },
        ]
        annotations.write_text(
            "\n".join(json.dumps(l) for l in lines) + "\n", encoding="utf-8"
        )
        return docs, annotations

    def test_span_fill_and_union(self, tmp_path):
        docs, annotations = self.make_fixture(tmp_path)
        corpus = convert_movies_eraser(docs, annotations, tmp_path / "mv.jsonl")
        pos = corpus.instances[0]
        assert pos.word_rationale == (0, 0, 1, 1, 1, 1, 0, 0, 0, 0)
        assert pos.label_index == 1
        neg = corpus.instances[1]
        assert neg.word_rationale == (0, 0, 0)
        assert neg.label_index == 0

    def test_split_from_filename(self, tmp_path):
        docs, annotations = self.make_fixture(tmp_path)
        corpus = convert_movies_eraser(docs, annotations, tmp_path / "mv.jsonl")
        assert all(i.split == "validation" for i in corpus.instances)

    def test_span_out_of_bounds(self, tmp_path):
        docs, annotations = self.make_fixture(tmp_path)
        bad = {
            "annotation_id": "negR_001.txt",
            "classification": "NEG",
            "evidences": [[{"docid": "negR_001.txt", "start_token": 1, "end_token": 9}]],
        }
        annotations.write_text(json.dumps(bad) + "\n", encoding="utf-8")
        with pytest.raises(DataError, match="negR_001"):
            convert_movies_eraser(docs, annotations, tmp_path / "mv.jsonl")


class TestAlignRationale:
    def make_instance(self, words, rationale):
        return RationaleInstance(
            id="inst",
            words=tuple(words),
            label_name="pos",
            label_index=1,
            word_rationale=tuple(rationale),
            split="train",
        )

    def test_identity_without_subword_splits(self):
        model = SubwordStubModel(piece=16)
        instance = self.make_instance(["good", "film"], [0, 1])
        [tokenized] = model.tokenize_batch([instance.words])
        human = align_rationale(instance, tokenized)
        assert human.mask == (0, 1)

    def test_subword_pieces_all_marked(self):
        model = SubwordStubModel(piece=4)
        instance = self.make_instance(["an", "unbelievable", "plot"], [0, 1, 0])
        [tokenized] = model.tokenize_batch([instance.words])
        # "unbelievable" -> 3 pieces of 4 chars
        assert tokenized.content_word_ids == (0, 1, 1, 1, 2)
        human = align_rationale(instance, tokenized)
        assert human.mask == (0, 1, 1, 1, 0)
        assert sum(human.mask) >= sum(instance.word_rationale)

    def test_word_ids_required(self):
        model = SubwordStubModel()
        instance = self.make_instance(["good"], [1])
        [tokenized] = model.tokenize_batch(["good"])  # raw text: no word ids
        with pytest.raises(DataError, match="word ids"):
            align_rationale(instance, tokenized)

    def test_truncation_drops_rationale_word(self):
        # room for CLS + 3 pieces + SEP only; rationale word 4 is cut off
        model = SubwordStubModel(max_length=5, piece=4)
        words = ["one", "two", "three", "four", "nine"]
        instance = self.make_instance(words, [0, 0, 0, 0, 1])
        [tokenized] = model.tokenize_batch([words], truncate=True)
        human = align_rationale(instance, tokenized)
        assert human.dropped_words == (4,)
        assert sum(human.mask) == 0

    def test_special_tokens_never_marked(self):
        model = SubwordStubModel()
        instance = self.make_instance(["bad"], [1])
        [tokenized] = model.tokenize_batch([instance.words])
        human = align_rationale(instance, tokenized)
        assert len(human.mask) == tokenized.n_content  # specials excluded entirely
