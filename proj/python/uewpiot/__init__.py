"""UAV wireless-powered IoT: link budget, tour planning and mission simulation."""

from ._core import (
    AntennaArray,
    CapabilityError,
    ConfigError,
    EhCircuit,
    Error,
    GeometryError,
    InfeasibleError,
    IoError,
    LinkGeometry,
    MissionScenario,
    NodeField,
    RadioEnvironment,
    TourMode,
    achievable_data_rate,
    achievable_eh_distance,
    array_gain_db,
    calibrate,
    compare_strategies,
    coverage_radius,
    describe_config,
    expected_path_loss_db,
    form_wpc_groups,
    free_space_path_loss_db,
    generate_nodes,
    harvested_power_dbm,
    los_probability,
    plan_tour,
    received_power_dbm,
    run_cli,
    simulate_mission,
    upa_physical_size,
)

__all__ = [name for name in dir() if not name.startswith("_")]
