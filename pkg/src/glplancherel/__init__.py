"""Exact Plancherel measures of GL(n,q), their limit laws M_{v,q}, and the
grand-canonical measure P_{v,q}."""

from .collection import PartitionCollection
from .ensembles import (
    ConvergenceRow,
    IdentityReport,
    MarginalConstraint,
    class_gf,
    convergence_table,
    enumerate_collections,
    limit_weight,
    marginal,
    verify_identity,
)
from .fieldpolys import PolynomialLabel, count_irreducibles, enumerate_irreducibles
from .measures import (
    CertifiedReal,
    gl_order,
    grand_weight,
    irrep_degree,
    m_weight,
    plancherel_weight,
    schur_special,
)
from .partitions import Partition, enumerate_partitions, partition_stats
from .sampler import SamplerConfig, sample_grand, sample_m_partition, sample_plancherel
from .series import ProductFactorSpec, TruncatedSeries, coeff_extract, pochhammer_series, series_arith

__version__ = "0.1.0"
