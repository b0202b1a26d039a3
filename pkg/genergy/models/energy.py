from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field


class EnergyProfile(BaseModel):
    """The six invariants of one graph.
    Attributes:
        n (int): Order.
        m (int): Edge count.
        energy (float): E(G), sum of |adjacency eigenvalues|.
        laplacian_energy (float): LE(G), sum of |mu_i - 2m/n|.
        lel (float): LEL(G), sum of sqrt(mu_i).
        ie (float): IE(G), sum of sqrt(q_i).
        pi (float): Sum of sqrt(d_i).
        pi_star (float): Sum of sqrt(d*_i).
    """

    model_config = ConfigDict(frozen=True)

    n: Annotated[int, Field(ge=1)]
    m: Annotated[int, Field(ge=0)]
    energy: Annotated[float, Field(ge=0.0)]
    laplacian_energy: Annotated[float, Field(ge=0.0)]
    lel: Annotated[float, Field(ge=0.0)]
    ie: Annotated[float, Field(ge=0.0)]
    pi: Annotated[float, Field(ge=0.0)]
    pi_star: Annotated[float, Field(ge=0.0)]

    def chain(self) -> tuple[float, float, float, float]:
        """Thresholds in classification order: (pi*, LEL, IE, pi)."""
        return (self.pi_star, self.lel, self.ie, self.pi)
