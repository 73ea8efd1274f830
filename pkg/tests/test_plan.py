import math
from dataclasses import replace

import pytest

from carsim.errors import FDValidationError, PlanningError
from carsim.fd import (
    Collision, Direction, EventKind, FormalDescription, Participant, Point2, Road, RoadKind, Tree, Vehicle,
    VehiclePart, parse_fd,
)
from carsim.plan import (
    NormalizedScene, PlannerConfig, Trajectory, TrajectoryPoint, collision_instants, dump_plan, load_plan, plan,
    plan_accident, plan_positions, plan_time, plan_trajectory, preplan,
)
from carsim.plan.trajectory import build_path, lane_change_offset

CFG = PlannerConfig()
E = EventKind
DF = (E.DRIVING_FORWARD,)


def scene(road, *vehicles, collisions=(), statics=()):
    return FormalDescription((Road(road), *statics), tuple(vehicles), tuple(collisions))


def east(ident, chain=DF):
    return Vehicle(ident, init_direction=Direction.EAST, chain=tuple(chain))


def straight_traj(ident, xs, y=0.0):
    return Trajectory(ident, [TrajectoryPoint(Point2(float(x), y)) for x in xs])


# positions

def test_single_vehicle_position():
    pos = plan_positions(NormalizedScene(scene(RoadKind.STRAIGHTROAD, east("a"))), CFG)
    assert pos["a"] == (Point2(-20.0, -1.75), Point2(32.0, -1.75))


def test_two_vehicles_same_direction():
    pos = plan_positions(NormalizedScene(scene(RoadKind.STRAIGHTROAD, east("a"), east("b"))), CFG)
    (sa, ea), (sb, eb) = pos["a"], pos["b"]
    assert (sa.x, sb.x) == (-20.0, -26.0)
    assert (ea.x, eb.x) == (32.0, 26.0)
    assert abs((ea.x - sa.x) - (eb.x - sb.x)) <= 12.0


def test_three_vehicles_equal_lengths():
    pos = plan_positions(NormalizedScene(scene(RoadKind.STRAIGHTROAD, east("a"), east("b"), east("c"))), CFG)
    assert [pos[k][0].x for k in "abc"] == [-20.0, -26.0, -32.0]
    assert [pos[k][1].x for k in "abc"] == [32.0, 26.0, 20.0]
    assert {pos[k][1].x - pos[k][0].x for k in "abc"} == {52.0}


def test_other_directions_mirror():
    fd = scene(RoadKind.CROSSROADS, Vehicle("n", init_direction=Direction.NORTH, chain=DF),
               Vehicle("w", init_direction=Direction.WEST, chain=DF))
    pos = plan_positions(NormalizedScene(fd), CFG)
    assert pos["n"] == (Point2(1.75, -20.0), Point2(1.75, 32.0))
    assert pos["w"] == (Point2(20.0, 1.75), Point2(-32.0, 1.75))


def test_too_many_in_one_direction():
    fd = scene(RoadKind.STRAIGHTROAD, *(east(f"v{i}") for i in range(4)))
    with pytest.raises(PlanningError) as err:
        plan_positions(NormalizedScene(fd), CFG)
    assert err.value.code == "max_same_direction"


# trajectories

def traj_for(vehicle, road=RoadKind.CROSSROADS):
    fd = scene(road, vehicle)
    return plan_trajectory(vehicle, plan_positions(NormalizedScene(fd), CFG), road, CFG)


def test_straight_trajectory_sampling():
    pts = traj_for(east("a"), RoadKind.STRAIGHTROAD).positions
    assert len(pts) == 27
    assert pts[0] == Point2(-20.0, -1.75) and pts[-1] == Point2(32.0, -1.75)
    assert all(p.y == -1.75 for p in pts)
    assert all(math.isclose(a.distance(b), 2.0) for a, b in zip(pts, pts[1:]))


def test_left_turn_follows_arc():
    v = east("a", (E.DRIVING_FORWARD, E.TURN_LEFT, E.DRIVING_FORWARD))
    fd = scene(RoadKind.CROSSROADS, v)
    path = build_path(v, plan_positions(NormalizedScene(fd), CFG), RoadKind.CROSSROADS, CFG)
    (arc,) = path.arcs
    for p in path.points[arc.first:arc.last + 1]:
        assert abs(p.distance(arc.center) - CFG.turn_radius) <= 1e-6
    assert path.heading is Direction.NORTH
    assert path.points[arc.last].x == pytest.approx(CFG.lane_offset)  # exits in the northbound lane
    assert path.points[-1].y > path.points[arc.last].y


def test_right_turn_heads_south():
    v = east("a", (E.TURN_RIGHT,))
    assert traj_for(v).heading is Direction.SOUTH


def test_overtake_profile():
    v = east("a", (E.DRIVING_FORWARD, E.OVERTAKE, E.DRIVING_FORWARD))
    pts = traj_for(v, RoadKind.STRAIGHTROAD).positions
    offsets = [p.y + CFG.lane_offset for p in pts]
    assert offsets[0] == 0.0 and abs(offsets[-1]) <= 1e-12
    assert max(offsets) == pytest.approx(2 * CFG.lane_offset, abs=1e-12)
    # closed form of the half-cosine
    assert lane_change_offset(7.5, 15.0, 3.5) == pytest.approx(1.75)
    assert lane_change_offset(15.0, 15.0, 3.5) == pytest.approx(3.5)


def test_stop_is_a_dwell_marker():
    t = traj_for(east("a", (E.DRIVING_FORWARD, E.STOP, E.DRIVING_FORWARD)), RoadKind.STRAIGHTROAD)
    (index,) = t.stops
    assert 0 < index < len(t.points) - 1


def test_turn_on_straightroad_rejected():
    with pytest.raises(PlanningError) as err:
        traj_for(east("a", (E.TURN_LEFT,)), RoadKind.STRAIGHTROAD)
    assert err.value.code == "turn_on_straightroad"


# accidents

def pinned(result, ident):
    t = result[ident]
    return t.positions, t.collision_indices


def test_accident_removes_circle_and_suffix():
    a = straight_traj("a", range(-20, 33, 2))
    c = Collision(Participant("a"), Participant("tree1"), Point2(0.0, 1.0))
    out = plan_accident({"a": a}, c, 1, CFG)
    pts, idx = pinned(out, "a")
    assert pts[-1] == Point2(0.0, 1.0) and idx == {1: len(pts) - 1}
    cut = next(i for i, p in enumerate(pts) if p.distance(Point2(0.0, 1.0)) < CFG.collision_radius)
    assert all(p.x < -4 for p in pts[:cut])
    assert all(a.distance(b) <= CFG.sample_step + 1e-9 for a, b in zip(pts, pts[1:]))


def test_accident_far_off_end():
    a = straight_traj("a", range(0, 21, 2))
    out = plan_accident({"a": a}, Collision(Participant("a"), Participant("x"), Point2(30.0, 0.5)), 1,
                        replace(CFG, collision_radius=1.0))
    pts, _ = pinned(out, "a")
    assert pts[:11] == a.positions
    assert pts[-1] == Point2(30.0, 0.5)


def test_accident_tiny_radius_cuts_only_suffix():
    a = straight_traj("a", range(0, 21, 2))
    out = plan_accident({"a": a}, Collision(Participant("a"), Participant("x"), Point2(10.0, 0.0)), 1,
                        replace(CFG, collision_radius=1e-9))
    pts, idx = pinned(out, "a")
    assert pts == a.positions[:6] and idx[1] == 5


def test_accident_start_inside_circle():
    a = straight_traj("a", range(0, 21, 2))
    with pytest.raises(PlanningError) as err:
        plan_accident({"a": a}, Collision(Participant("a"), Participant("x"), Point2(1.0, 0.0)), 1, CFG)
    assert err.value.code == "collision_circle"


def test_accident_order_enforced():
    a = straight_traj("a", range(-20, 21, 2))
    out = plan_accident({"a": a}, Collision(Participant("a"), Participant("x"), Point2(0.0, 0.0)), 2, CFG)
    with pytest.raises(PlanningError) as err:
        plan_accident(out, Collision(Participant("a"), Participant("x"), Point2(5.0, 0.0)), 1, CFG)
    assert err.value.code == "collision_order"


def test_static_victim_untouched():
    a = straight_traj("a", range(-20, 21, 2))
    out = plan_accident({"a": a}, Collision(Participant("a"), Participant("tree1"), Point2(0.0, 0.0)), 1, CFG)
    assert set(out) == {"a"}


# time

def test_collision_instants():
    assert collision_instants(1) == [0.5]
    assert collision_instants(2) == [1 / 3, 2 / 3]
    assert collision_instants(0) == []


def test_time_without_collisions():
    result = plan_time([straight_traj("a", range(0, 11, 2))], [], CFG)
    times = [p.time for p in result.trajectories[0].points]
    assert times[0] == 0.0 and times[-1] == 1.0
    assert all(a < b for a, b in zip(times, times[1:]))


def test_time_single_collision():
    c = Collision(Participant("a"), Participant("b"), Point2(0.0, 0.0))
    trajs = {"a": straight_traj("a", range(-20, 21, 2)), "b": straight_traj("b", range(20, -21, -2))}
    result = plan_time(plan_accident(trajs, c, 1, CFG).values(), [c], CFG)
    assert result.collision_times == (0.5,)
    for t in result.trajectories:
        assert t.points[t.collision_indices[1]].time == 0.5


def test_stop_dwell_consumes_time():
    t = Trajectory("a", [TrajectoryPoint(Point2(float(x), 0.0)) for x in range(5)], stops={2: 1})
    pts = plan_time([t], [], CFG).trajectories[0].points
    assert pts[2].dwell == pytest.approx(0.1)
    assert pts[3].time - pts[2].time == pytest.approx(0.1 + 0.9 / 4)


# preplan

def test_preplan_places_tree(a4_fd_text):
    fd = parse_fd(a4_fd_text)
    statics = list(fd.statics)
    statics[1] = Tree("tree1")
    result = preplan(replace(fd, statics=tuple(statics)))
    assert result.fd.statics[1].coord == Point2(5.0, -5.0)
    assert result.fd.dynamics == fd.dynamics
    assert result.diagnostics


def test_preplan_removes_turn_on_straightroad():
    fd = scene(RoadKind.STRAIGHTROAD, east("a", (E.TURN_LEFT,)))
    result = preplan(fd)
    assert result.fd.dynamics[0].chain == DF
    assert any("straight road" in d for d in result.diagnostics)


def test_preplan_idempotent_on_complete_input(a4_fd_text):
    fd = parse_fd(a4_fd_text)
    once = preplan(fd).fd
    assert preplan(once).fd == once
    assert once.statics == fd.statics and once.dynamics == fd.dynamics
    assert once.collisions[0] == fd.collisions[0]
    assert once.collisions[1].victim == fd.collisions[1].victim


def test_preplan_defaults_unknown_actor_part():
    fd = scene(RoadKind.STRAIGHTROAD, east("a"), Vehicle("b", init_direction=Direction.WEST, chain=DF),
               collisions=[Collision(Participant("a"), Participant("b"))])
    c = preplan(fd).fd.collisions[0]
    assert c.actor.part is VehiclePart.FRONT and c.coord is not None


def test_preplan_rejects_invalid():
    fd = scene(RoadKind.STRAIGHTROAD, east("a"), east("a"))
    with pytest.raises(FDValidationError):
        preplan(fd)


def test_preplan_fills_directions_and_chains():
    fd = scene(RoadKind.CROSSROADS, Vehicle("a"), Vehicle("b"), collisions=[Collision(Participant("a"), Participant("b"))])
    out = preplan(fd).fd
    assert all(v.init_direction is not None and v.chain for v in out.dynamics)


def test_preplan_max_same_direction():
    fd = scene(RoadKind.STRAIGHTROAD, *(east(f"v{i}") for i in range(4)))
    with pytest.raises(PlanningError) as err:
        plan(fd)
    assert err.value.code == "max_same_direction"


# whole planner

def test_plan_a4(a4_fd_text):
    result = plan(parse_fd(a4_fd_text))
    assert len(result.trajectories) == 2
    assert result.collision_times == (1 / 3, 2 / 3)
    a, b = result.trajectory("vehicleA"), result.trajectory("vehicleB")
    assert b.points[b.collision_indices[1]].position == Point2(1.0, 1.0)
    assert a.points[a.collision_indices[1]].position == Point2(1.0, 1.0)
    assert a.points[a.collision_indices[2]].position == Point2(5.0, -5.0)
    assert a.points[a.collision_indices[1]].time == b.points[b.collision_indices[1]].time == 1 / 3


def test_plan_minimal():
    result = plan(scene(RoadKind.STRAIGHTROAD, east("a")))
    (t,) = result.trajectories
    times = [p.time for p in t.points]
    assert times[0] == 0.0 and times[-1] == 1.0 and all(x < y for x, y in zip(times, times[1:]))


def test_export_round_trip(a4_fd_text):
    result = plan(parse_fd(a4_fd_text))
    text = dump_plan(result)
    assert dump_plan(load_plan(text)) == text
    assert load_plan(text).trajectories == result.trajectories


# configuration

@pytest.mark.parametrize("kwargs", [
    {"start_distances": ()},
    {"start_distances": (20, 10, 30)},
    {"sample_step": 0},
    {"turn_radius": math.nan},
    {"collision_radius": 25},
    {"max_same_direction": 4},
])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        PlannerConfig(**kwargs)


def test_config_dict_round_trip():
    assert PlannerConfig.from_dict(CFG.to_dict()) == CFG
    with pytest.raises(ValueError):
        PlannerConfig.from_dict({"speed": 3})
