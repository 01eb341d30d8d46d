"""Random connection models on hyperbolic space: geometry, sampling,
radial convolution, diagram integrals and critical-intensity expansions."""

from hrcm._core import (  # noqa: F401
    AdjacencySpec,
    Configuration,
    HPoint,
    PointCloud,
    Seed,
    add_palm,
    ball_intersection_volume,
    ball_volume,
    boolean_expected_degree_expansion,
    boolean_lambda_c_expansion,
    boolean_spec,
    build_graph,
    clusters,
    crossing_probability,
    default_heat_amplitude,
    degree_of,
    diagram_report,
    dist,
    effective_range,
    estimate_lambda_c,
    general_expansion,
    heat_expansion,
    heat_spec,
    horocycle_coordinate,
    lens_geometry,
    loop_value,
    mecke_degree_check,
    mixed_diagram,
    norm_1to1,
    norm_2to2,
    origin,
    origin_cluster_reaches,
    phi,
    q_function,
    render_configuration_svg,
    sample_ppp,
    sphere_constant,
    triangle_checks,
)

__all__ = [name for name in dir() if not name.startswith("_")]
