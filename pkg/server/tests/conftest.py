import pytest
from fastapi.testclient import TestClient

from xaibench_server import ModelEngine, build_tiny_classifier, create_app

MAX_BATCH = 8


@pytest.fixture(scope="session")
def checkpoint(tmp_path_factory):
    return build_tiny_classifier(tmp_path_factory.mktemp("tiny-model"), seed=0)


@pytest.fixture(scope="session")
def engine(checkpoint):
    return ModelEngine(str(checkpoint), device="cpu")


@pytest.fixture(scope="session")
def app(engine):
    return create_app(engine, max_batch=MAX_BATCH)


@pytest.fixture(scope="session")
def client(app):
    with TestClient(app) as test_client:
        yield test_client
