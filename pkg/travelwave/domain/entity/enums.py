from enum import Enum


class Scenario(str, Enum):
    REL2BODY = "rel2body"
    TWOBODY = "twobody"
    NCME_COLLISION = "ncme-collision"

class VerifyCheck(str, Enum):
    ODE = "ode"
    PDE = "pde"
    LINEAR_WAVE = "linear-wave"
    RK4 = "rk4"

class EquationId(str, Enum):
    COMPANION_ODE = "companion-ode"
    COMPANION_PDE = "companion-pde"
    LINEAR_WAVE = "linear-wave"
    NCME_ODE = "ncme-ode"

class Provenance(str, Enum):
    RELATIVE_TWO_BODY = "relative-2body"
    TWO_BODY_PAIR = "2body-pair"
    NCME_COLLISION = "ncme-collision"

class GridKind(str, Enum):
    W_GRID = "w-grid"
    LATTICE = "lattice"

class ChartKind(str, Enum):
    CARTESIAN = "cartesian"
    SPHERICAL = "spherical"
    CYLINDRICAL = "cylindrical"

class FrontShape(str, Enum):
    TANGENT_PLANES = "tangent-plane-family"
    SPHERE = "sphere"
    CYLINDER = "cylinder"
