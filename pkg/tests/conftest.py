import pytest

from diagmod.families import demo_compatible_family, demo_incompatible_family


@pytest.fixture(scope="session")
def incompatible_family():
    """Disconnected 3-box diagram, high box read first; reading words
    312, 123, 132.  Not ascent-compatible."""
    return demo_incompatible_family()


@pytest.fixture(scope="session")
def compatible_family():
    """Bent 3-box diagram, low box read first; reading words 213, 123, 132.
    Ascent-compatible."""
    return demo_compatible_family()


def member_by_word(family, word):
    for tab in family:
        if tab.reading_word == tuple(word):
            return tab
    raise LookupError(word)
