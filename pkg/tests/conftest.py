from __future__ import annotations

import json
from pathlib import Path

import pytest

from safetylint import parse_model

REPO_ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = REPO_ROOT / "corpus"
GOLDEN_DIR = CORPUS_DIR / "golden"
DATA_DIR = Path(__file__).resolve().parent / "data"

CORPUS_FILES = sorted(p for p in CORPUS_DIR.glob("*.json"))


def corpus_path(name: str) -> Path:
    return CORPUS_DIR / name


def load_corpus(name: str):
    return parse_model(corpus_path(name).read_text(encoding="utf-8"))


@pytest.fixture
def lane_keeping():
    return load_corpus("lane_keeping.json")


@pytest.fixture
def lane_keeping_doc() -> dict:
    return json.loads(corpus_path("lane_keeping.json").read_text(encoding="utf-8"))


def minimal_doc() -> dict:
    """Smallest well-formed document, as a mutable template for tests."""
    return {
        "meta": {"schema_version": "1", "name": "template"},
        "hazardous_events": [
            {
                "id": "HE-1",
                "description": "malfunction",
                "scenario": "driving",
                "exposure": 4,
                "severity": 3,
                "controllability": 3,
            }
        ],
        "safety_goals": [
            {"id": "SG-1", "text": "prevent it", "hazardous_event_ids": ["HE-1"]}
        ],
        "requirements": [
            {"id": "FSR-1", "kind": "FSR", "parent_ids": ["SG-1"]},
            {
                "id": "TSR-1",
                "kind": "TSR",
                "parent_ids": ["FSR-1"],
                "allocated_to": ["HW-1"],
            },
        ],
        "hw_components": [
            {"id": "HW-1", "fault_data": [{"safety_related_fit": 5.0}]}
        ],
    }


def parse_doc(doc: dict):
    return parse_model(json.dumps(doc))
