import numpy as np
import pytest

from moebspec import discreteops, eigen, meshcore, surfgen


@pytest.fixture(scope="session")
def clifford96():
    return surfgen.gen_clifford((96, 96))


@pytest.fixture(scope="session")
def clifford96_spectrum(clifford96):
    centered = meshcore.center_mesh(clifford96)
    L = discreteops.cotan_stiffness(centered)
    M = discreteops.lumped_mass(centered)
    spectrum = eigen.spectrum_of(centered, k=8, L=L, M=M)
    return centered, L, M, spectrum


@pytest.fixture(scope="session")
def sphere5():
    return surfgen.gen_sphere(1.0, 5)


@pytest.fixture(scope="session")
def sphere5_spectrum(sphere5):
    centered = meshcore.center_mesh(sphere5)
    L = discreteops.cotan_stiffness(centered)
    M = discreteops.lumped_mass(centered)
    spectrum = eigen.spectrum_of(centered, k=8, L=L, M=M)
    return centered, L, M, spectrum


@pytest.fixture(scope="session")
def veronese5():
    return surfgen.gen_veronese(5)


@pytest.fixture(scope="session")
def veronese5_spectrum(veronese5):
    centered = meshcore.center_mesh(veronese5)
    L = discreteops.cotan_stiffness(centered)
    M = discreteops.lumped_mass(centered)
    spectrum = eigen.spectrum_of(centered, k=8, L=L, M=M)
    return centered, L, M, spectrum


OCTA_VERTICES = np.array(
    [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]],
    dtype=np.float64,
)
OCTA_FACES = np.array(
    [[0, 2, 4], [2, 1, 4], [1, 3, 4], [3, 0, 4],
     [2, 0, 5], [1, 2, 5], [3, 1, 5], [0, 3, 5]],
    dtype=np.int64,
)


@pytest.fixture
def octahedron():
    return meshcore.validate_mesh(OCTA_VERTICES, OCTA_FACES)
