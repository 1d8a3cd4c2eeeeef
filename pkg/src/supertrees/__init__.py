"""Path counting, transfer-matrix spectra and q-Dyck combinatorics on super trees."""

from importlib.metadata import PackageNotFoundError, version

from .errors import SupertreeError
from .pathcount import count_paths, enumerate_paths_bruteforce, entropy, mean_displacement, watermelon
from .spectral import charpoly, eigenvalues, monic_hermite, spectral_density
from .supertree import BranchingProfile, Kind, TransferMatrix, build_profile, symmetrize, transfer_matrix

try:
    __version__ = version("artifact")
except PackageNotFoundError:
    __version__ = "0.0.0"

__all__ = [
    "BranchingProfile",
    "Kind",
    "SupertreeError",
    "TransferMatrix",
    "build_profile",
    "charpoly",
    "count_paths",
    "eigenvalues",
    "entropy",
    "enumerate_paths_bruteforce",
    "mean_displacement",
    "monic_hermite",
    "spectral_density",
    "symmetrize",
    "transfer_matrix",
    "watermelon",
]
