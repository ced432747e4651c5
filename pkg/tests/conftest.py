import pytest

from sqlucid.fixtures import DATABASES, build_corpus
from sqlucid.gateway import introspect, open_database


@pytest.fixture(scope="session")
def corpus_root(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    build_corpus(root)
    return root


@pytest.fixture(scope="session")
def db_paths(corpus_root):
    return {name: corpus_root / "fixtures" / f"{name}.sqlite" for name in DATABASES}


@pytest.fixture(scope="session")
def handles(db_paths):
    opened = {name: open_database(path) for name, path in db_paths.items()}
    yield opened
    for handle in opened.values():
        handle.conn.close()


@pytest.fixture(scope="session")
def schemas(handles):
    return {name: introspect(handle) for name, handle in handles.items()}
