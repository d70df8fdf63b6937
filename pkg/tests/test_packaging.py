try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path

PYPROJECT = Path(__file__).resolve().parent.parent / "pyproject.toml"


def load_project():
    return tomllib.loads(PYPROJECT.read_text())["project"]


def test_formatters_are_dev_only():
    project = load_project()
    runtime = " ".join(project["dependencies"])
    assert "black" not in runtime
    assert "ruff" not in runtime
    dev = " ".join(project["optional-dependencies"]["dev"])
    assert "black" in dev and "ruff" in dev


def test_runtime_stack():
    names = {spec.split(">")[0].split("=")[0] for spec in load_project()["dependencies"]}
    assert names == {"numpy", "pandas", "sympy"}
