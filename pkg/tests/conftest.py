from pathlib import Path

import pytest

from altia.io import load_model

MODELS = Path(__file__).resolve().parent.parent / "models"


def _loader(filename):
    @pytest.fixture(scope="session")
    def fixture():
        return load_model(MODELS / filename)

    return fixture


machine = _loader("machine.aia")
widget = _loader("widget.aia")
scenario = _loader("scenario.aia")
coffee = _loader("coffee.ia")
tea = _loader("tea.ia")
milkdrinks = _loader("milkdrinks.ia")
combo = _loader("combo.ia")
good_machine = _loader("good_machine.ia")
faulty_tea = _loader("faulty_tea.ia")


@pytest.fixture(scope="session")
def models_dir():
    return MODELS
