import pytest

from reesalg.curves import derive_params

MATRIX = [(4, 1), (7, 2), (5, 1), (8, 1), (6, 1), (9, 2)]
B12 = [mp for mp in MATRIX if derive_params(*mp).b != 3]
B3 = [mp for mp in MATRIX if derive_params(*mp).b == 3]


@pytest.fixture(params=MATRIX, ids=lambda mp: f"m0={mp[0]},d={mp[1]}")
def params(request):
    return derive_params(*request.param)
