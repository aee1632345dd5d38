#ifndef WINDPLAN_H
#define WINDPLAN_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum WpStatus {
  WP_STATUS_OK = 0,
  WP_STATUS_NULL_POINTER = 1,
  WP_STATUS_INVALID_ARGUMENT = 2,
  WP_STATUS_IO = 3,
  WP_STATUS_PARSE = 4,
  /**
   * The planner finished without a solution; metrics are still written.
   */
  WP_STATUS_NO_SOLUTION = 5,
  WP_STATUS_PANIC = 6,
} WpStatus;

/**
 * Cost objective codes accepted as `uint32_t` arguments.
 */
typedef enum WpObjective {
  WP_OBJECTIVE_DISTANCE = 0,
  WP_OBJECTIVE_TIME = 1,
  WP_OBJECTIVE_ENERGY = 2,
} WpObjective;

/**
 * Path frame codes accepted as `uint32_t` arguments.
 */
typedef enum WpFrame {
  WP_FRAME_GROUND = 0,
  WP_FRAME_AIR = 1,
} WpFrame;

/**
 * Shear axis codes accepted as `uint32_t` arguments.
 */
typedef enum WpShearAxis {
  WP_SHEAR_AXIS_X = 0,
  WP_SHEAR_AXIS_Y = 1,
} WpShearAxis;

typedef struct WpPath WpPath;

typedef struct WpScenario WpScenario;

/**
 * Waypoints of a planned solution.
 */
typedef struct WpSolution WpSolution;

typedef struct WpTerrain WpTerrain;

typedef struct WpWindField WpWindField;

/**
 * Vehicle parameters; angles in radians.
 */
typedef struct WpVehicleModel {
  double mass;
  double kappa_max;
  double thrust_power_coefficient;
  double airspeed;
  double gamma_ground_max;
  double gamma_air_max;
  double drag;
  double avionics_power;
  double gravity;
} WpVehicleModel;

typedef struct WpVec3 {
  double x;
  double y;
  double z;
} WpVec3;

typedef struct WpWindTriangle {
  double ground_speed;
  double airspeed_parallel;
  double wind_perpendicular;
  double wind_parallel;
  double gamma_air;
  bool feasible;
} WpWindTriangle;

/**
 * Position and heading (rad, counter-clockwise from +x).
 */
typedef struct WpState {
  double x;
  double y;
  double z;
  double heading;
} WpState;

typedef struct WpPathSample {
  double s;
  struct WpState state;
  struct WpVec3 tangent;
  double curvature;
} WpPathSample;

typedef struct WpCostReport {
  double value;
  double flight_time;
  double energy;
  double length;
  bool feasible;
} WpCostReport;

/**
 * Per-run metrics; `t_first_solution_s` is negative when no solution was
 * found.
 */
typedef struct WpPlanMetrics {
  bool success;
  uint64_t graph_states;
  uint64_t iterations;
  double t_first_solution_s;
  double planning_time_s;
  double flight_time_s;
  double energy_j;
  double length_m;
} WpPlanMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a
 * successful call. The pointer stays valid until the next `wp_` call on
 * the same thread.
 */
const char *wp_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *wp_version(void);

/**
 * Default vehicle parameters.
 */
struct WpVehicleModel wp_vehicle_default(void);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum WpStatus wp_wind_field_uniform(double wx, double wy, double wz, struct WpWindField **out);

/**
 * `axis` is a [`WpShearAxis`] code.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum WpStatus wp_wind_field_shear(double boundary,
                                  double magnitude,
                                  uint32_t axis,
                                  struct WpWindField **out);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum WpStatus wp_wind_field_updraft(double center_x,
                                    double center_y,
                                    double radius,
                                    double strength,
                                    struct WpWindField **out);

/**
 * Loads a gridded wind field file.
 *
 * # Safety
 * `path` must be null or a NUL-terminated string; `out` must be null or
 * valid for writes.
 */
enum WpStatus wp_wind_field_load_grid(const char *path, struct WpWindField **out);

/**
 * # Safety
 * `field` must be null or a handle from this library, freed at most once.
 */
void wp_wind_field_free(struct WpWindField *field);

/**
 * # Safety
 * `field` must be a live handle or null; `out` null or valid for writes.
 */
enum WpStatus wp_wind_field_sample(const struct WpWindField *field,
                                   struct WpVec3 position,
                                   struct WpVec3 *out);

/**
 * Solves the wind triangle for a unit ground-track tangent.
 *
 * # Safety
 * `model` must be null or valid for reads; `out` null or valid for writes.
 */
enum WpStatus wp_solve_wind_triangle(struct WpVec3 tangent,
                                     struct WpVec3 wind,
                                     const struct WpVehicleModel *model,
                                     struct WpWindTriangle *out);

/**
 * Loads an elevation map file.
 *
 * # Safety
 * `path` must be null or a NUL-terminated string; `out` null or valid for
 * writes.
 */
enum WpStatus wp_terrain_load(const char *path, struct WpTerrain **out);

/**
 * # Safety
 * `terrain` must be null or a handle from this library, freed at most once.
 */
void wp_terrain_free(struct WpTerrain *terrain);

/**
 * Terrain height at (x, y); `-inf` outside a non-strict map, `+inf` at
 * nodata or outside a strict map.
 *
 * # Safety
 * `terrain` must be a live handle or null; `out` null or valid for writes.
 */
enum WpStatus wp_terrain_elevation(const struct WpTerrain *terrain,
                                   double x,
                                   double y,
                                   double *out);

/**
 * Shortest Dubins airplane path between two states.
 *
 * # Safety
 * `model` must be null or valid for reads; `out` null or valid for writes.
 */
enum WpStatus wp_path_connect(struct WpState start,
                              struct WpState goal,
                              const struct WpVehicleModel *model,
                              struct WpPath **out);

/**
 * # Safety
 * `path` must be null or a handle from this library, freed at most once.
 */
void wp_path_free(struct WpPath *path);

/**
 * Total 3D length, m.
 *
 * # Safety
 * `path` must be a live handle or null; `out` null or valid for writes.
 */
enum WpStatus wp_path_length(const struct WpPath *path, double *out);

/**
 * Flight path angle of the path, rad.
 *
 * # Safety
 * `path` must be a live handle or null; `out` null or valid for writes.
 */
enum WpStatus wp_path_gamma(const struct WpPath *path, double *out);

/**
 * Pose at arc length `s`, clamped to the path.
 *
 * # Safety
 * `path` must be a live handle or null; `out` null or valid for writes.
 */
enum WpStatus wp_path_sample(const struct WpPath *path, double s, struct WpPathSample *out);

/**
 * Integrates the cost of a path through a wind field; `objective` is a
 * [`WpObjective`] code and `step` the integration step in meters.
 *
 * # Safety
 * Handles must be live or null; `model` null or valid for reads; `out`
 * null or valid for writes.
 */
enum WpStatus wp_path_cost(const struct WpPath *path,
                           const struct WpWindField *field,
                           const struct WpVehicleModel *model,
                           uint32_t objective,
                           double step,
                           struct WpCostReport *out);

/**
 * Loads a scenario file and every file it references.
 *
 * # Safety
 * `path` must be null or a NUL-terminated string; `out` null or valid for
 * writes.
 */
enum WpStatus wp_scenario_load(const char *path, struct WpScenario **out);

/**
 * # Safety
 * `scenario` must be null or a handle from this library, freed at most once.
 */
void wp_scenario_free(struct WpScenario *scenario);

/**
 * Plans one configuration of a scenario. `budget_s <= 0` keeps the
 * scenario budget and `max_iterations == 0` means no iteration cap.
 * Metrics are written whenever planning ran, including when it returns
 * [`WpStatus::NoSolution`]; `out` receives a solution handle only on
 * success and null otherwise.
 *
 * # Safety
 * `scenario` must be a live handle or null; `metrics` and `out` null or
 * valid for writes.
 */
enum WpStatus wp_scenario_plan(const struct WpScenario *scenario,
                               uint32_t objective,
                               uint32_t frame,
                               uint64_t seed,
                               double budget_s,
                               uint64_t max_iterations,
                               struct WpPlanMetrics *metrics,
                               struct WpSolution **out);

/**
 * # Safety
 * `solution` must be null or a handle from this library, freed at most once.
 */
void wp_solution_free(struct WpSolution *solution);

/**
 * Number of waypoints, start and goal included.
 *
 * # Safety
 * `solution` must be a live handle or null; `out` null or valid for writes.
 */
enum WpStatus wp_solution_waypoint_count(const struct WpSolution *solution, size_t *out);

/**
 * Copies up to `capacity` waypoints into `buffer` and the number copied
 * into `written`.
 *
 * # Safety
 * `buffer` must be valid for `capacity` writes; `written` null or valid
 * for writes.
 */
enum WpStatus wp_solution_waypoints(const struct WpSolution *solution,
                                    struct WpState *buffer,
                                    size_t capacity,
                                    size_t *written);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WINDPLAN_H */
