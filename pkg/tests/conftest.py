import pytest

from epimine.scanner import EventSequence

import helpers


@pytest.fixture(scope="session")
def s1():
    return EventSequence(helpers.S1)


@pytest.fixture(scope="session")
def s2():
    return EventSequence(helpers.S2)


@pytest.fixture(scope="session")
def s3():
    return EventSequence(helpers.S3)
