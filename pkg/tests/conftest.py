import hypothesis
import pytest

hypothesis.settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=40,
    deadline=None,
)
hypothesis.settings.load_profile("ci")


@pytest.fixture(scope="session")
def resolved_example():
    """The fully resolved built-in instance, shared across test modules."""
    from maclane_surfaces.quotchart import triple_point_data
    from maclane_surfaces.resolution import resolve_example

    return resolve_example(triple_point_data())
