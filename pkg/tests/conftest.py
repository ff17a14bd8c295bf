import numpy as np
import pytest

from reliaspc import GoModel, load_dataset

# Published reference table: cumulative time, m(t), successive difference
REF_CUMULATIVE = [
    30.02, 31.46, 53.93, 55.29, 58.72, 71.92, 77.07, 80.9, 101.9, 114.87,
    115.34, 121.57, 124.96, 134.07, 136.25, 151.78, 177.5, 180.29, 182.21, 186.34,
    256.81, 273.88, 277.87, 453.93, 535, 537.27, 552.9, 673.68, 704.49, 738.68,
]
REF_MEAN = [
    3.745007495, 3.913694999, 6.424977934, 6.569917434, 6.932013469,
    8.280486673, 8.787765189, 9.158368093, 11.09340056, 12.21053592,
    12.24995015, 12.76552285, 13.04076653, 13.76237585, 13.93122731,
    15.09281062, 16.86610295, 17.04782168, 17.1717137, 17.435038,
    21.32341928, 22.11292853, 22.28989853, 27.8675148, 29.38640162,
    29.42230429, 29.66093578, 31.08153524, 31.34753639, 31.60709258,
]
REF_DIFF = [
    0.168687503, 2.511282936, 0.1449395, 0.362096035, 1.348473204,
    0.507278516, 0.370602904, 1.935032465, 1.11713536, 0.039414228,
    0.515572704, 0.275243684, 0.72160932, 0.168851459, 1.161583304,
    1.773292339, 0.181718724, 0.123892025, 0.263324295, 3.888381284,
    0.789509245, 0.176969998, 5.577616276, 1.518886819, 0.03590267,
    0.238631489, 1.420599455, 0.266001157, 0.259556189,
]
REF_LIMITS = (0.04508506100108, 16.6981710073481, 33.3512569382986)

# Golden values from a 50-digit mpmath bisection of the score (200 halvings of [1e-8, 1]).
MLE_B = 0.0030899998576927079961
MLE_A = 33.408564346138059021
# 50-digit evaluation of the closed-form MMLE with independently computed constants
MMLE_B = 0.0033394526194313699
MMLE_A = 32.781764806740489


@pytest.fixture
def xie_log():
    return load_dataset("xie2002")


@pytest.fixture
def paper_model():
    return GoModel(33.396342, 0.003962)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, title, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] C{key} {title}: {detail}")
