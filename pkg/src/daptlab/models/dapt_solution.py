from typing import Dict
from .hamiltonian_path import HamiltonianPath
from .spectral_flow import SpectralFlow
from .m_field import MField
from .wz_transport import WZTransport
from .coeff_set import CoeffSet


class DaptSolution:
    def __init__(self, path: HamiltonianPath, flow: SpectralFlow, mfield: MField, transport: WZTransport,
                 coeffs: CoeffSet, initial_row: int = 0):
        self.path = path
        self.flow = flow
        self.mfield = mfield
        self.transport = transport
        self.coeffs = coeffs
        self.initial_row = initial_row

    @property
    def v(self) -> float:
        return self.path.v

    @property
    def hbar(self) -> float:
        return self.path.hbar

    def to_dict(self) -> Dict:
        return {
            'path': self.path.to_dict(),
            'flow': self.flow.to_dict(),
            'transport': self.transport.to_dict(),
            'order': self.coeffs.order,
            'initialRow': self.initial_row
        }


__all__ = ['DaptSolution']
