#!/usr/bin/env python3
"""Writes the unsolvable fixture set. Every instance here has no plan; several
are built so that neither the planning graph nor the delete relaxation notices,
and some adjoin independent two-state switches that inflate the state space."""
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent


def act(name, pre, add, dele, cost=1):
    return {"name": name, "pre": pre, "add": add, "del": dele, "cost": cost}


def problem(actions, init, goal):
    fluents = sorted({f for a in actions for k in ("pre", "add", "del") for f in a[k]} | set(init) | set(goal))
    return {"fluents": fluents, "actions": actions, "init": sorted(init), "goal": sorted(goal)}


def with_switches(p, n, cost=1):
    p = json.loads(json.dumps(p))
    for i in range(n):
        on, off = f"on(s{i})", f"off(s{i})"
        p["actions"].append(act(f"flip_on(s{i})", [off], [on], [off], cost))
        p["actions"].append(act(f"flip_off(s{i})", [on], [off], [on], cost))
        p["fluents"] += [on, off]
        p["init"].append(off)
    p["fluents"].sort()
    p["init"].sort()
    return p


def unreachable_goal():
    return problem([act("step", ["p"], ["q"], ["p"])], ["p"], ["r"])


def relaxation_dead_end():
    # The only producer of the goal needs a fluent nothing adds.
    return problem([act("make", ["p", "key"], ["goal"], []), act("wander", ["p"], ["q"], [])], ["p"], ["goal"])


def two_cells_one_token():
    return problem([act("move(c1,c2)", ["at(c1)"], ["at(c2)"], ["at(c1)"]),
                    act("move(c2,c1)", ["at(c2)"], ["at(c1)"], ["at(c2)"])], ["at(c1)"], ["at(c1)", "at(c2)"])


def one_way_door():
    return problem([act("go(a,b)", ["in(a)"], ["in(b)"], ["in(a)"]),
                    act("go(b,c)", ["in(b)"], ["in(c)"], ["in(b)"])], ["in(a)"], ["in(a)", "in(c)"])


def fuel(trips_needed=2):
    acts = [act("fly(a,b)", ["at(a)", "fuel"], ["at(b)"], ["at(a)", "fuel"]),
            act("fly(b,a)", ["at(b)", "fuel"], ["at(a)"], ["at(b)", "fuel"]),
            act("load", ["at(b)", "cargo(b)"], ["cargo(plane)"], ["cargo(b)"]),
            act("unload", ["at(a)", "cargo(plane)"], ["cargo(a)"], ["cargo(plane)"])]
    return problem(acts, ["at(a)", "fuel", "cargo(b)"], ["cargo(a)"])


def tokens(cells, tokens_count):
    """tokens_count tokens on cells in a ring; goal: every cell occupied."""
    acts = []
    for i in range(cells):
        for j in range(cells):
            if i != j:
                acts.append(act(f"move(c{i},c{j})", [f"occ(c{i})", f"free(c{j})"], [f"occ(c{j})", f"free(c{i})"],
                                [f"occ(c{i})", f"free(c{j})"]))
    init = [f"occ(c{i})" for i in range(tokens_count)] + [f"free(c{i})" for i in range(tokens_count, cells)]
    return problem(acts, init, [f"occ(c{i})" for i in range(cells)])


def pigeonhole(pigeons, holes, cost=1):
    acts = []
    for p in range(pigeons):
        for h in range(holes):
            acts.append(act(f"put(p{p},h{h})", [f"out(p{p})", f"free(h{h})"], [f"in(p{p},h{h})", f"placed(p{p})"],
                            [f"out(p{p})", f"free(h{h})"], cost))
            acts.append(act(f"take(p{p},h{h})", [f"in(p{p},h{h})"], [f"out(p{p})", f"free(h{h})"],
                            [f"in(p{p},h{h})", f"placed(p{p})"], cost))
    init = [f"out(p{p})" for p in range(pigeons)] + [f"free(h{h})" for h in range(holes)]
    return problem(acts, init, [f"placed(p{p})" for p in range(pigeons)])


def no_passing(cells):
    """Two tokens on a line can never swap order."""
    acts = []
    for t in ("x", "y"):
        for i in range(cells):
            for j in (i - 1, i + 1):
                if 0 <= j < cells:
                    acts.append(act(f"slide({t},c{i},c{j})", [f"at({t},c{i})", f"free(c{j})"],
                                    [f"at({t},c{j})", f"free(c{i})"], [f"at({t},c{i})", f"free(c{j})"]))
    init = ["at(x,c0)", "at(y,c1)"] + [f"free(c{i})" for i in range(2, cells)]
    return problem(acts, init, [f"at(x,c{cells - 1})", f"at(y,c{cells - 2})"])


def paired_flips():
    """Both bits always flip together, so mixed states are unreachable."""
    return problem([act("up", ["lo(b0)", "lo(b1)"], ["hi(b0)", "hi(b1)"], ["lo(b0)", "lo(b1)"]),
                    act("down", ["hi(b0)", "hi(b1)"], ["lo(b0)", "lo(b1)"], ["hi(b0)", "hi(b1)"])],
                   ["lo(b0)", "lo(b1)"], ["hi(b0)", "lo(b1)"])


def locked_key():
    return problem([act("unlock", ["at(r1)", "has_key"], ["open"], []),
                    act("enter", ["at(r1)", "open"], ["at(r2)"], ["at(r1)"]),
                    act("grab", ["at(r2)", "key_in(r2)"], ["has_key"], ["key_in(r2)"])],
                   ["at(r1)", "key_in(r2)"], ["has_key"])


def zero_cost_loop():
    return problem([act("tick", ["a"], ["b"], ["a"], 0), act("tock", ["b"], ["a"], ["b"], 0),
                    act("ring", ["a", "b"], ["done"], [], 0)], ["a"], ["done"])


INSTANCES = {
    "unreachable_goal": unreachable_goal(),
    "relaxation_dead_end": relaxation_dead_end(),
    "two_cells_one_token": two_cells_one_token(),
    "one_way_door": one_way_door(),
    "fuel": fuel(),
    "tokens_3_2": tokens(3, 2),
    "tokens_4_3": tokens(4, 3),
    "pigeonhole_3_2": pigeonhole(3, 2),
    "pigeonhole_3_2_free": pigeonhole(3, 2, cost=0),
    "no_passing_3": no_passing(3),
    "no_passing_4": no_passing(4),
    "paired_flips": paired_flips(),
    "locked_key": locked_key(),
    "zero_cost_loop": zero_cost_loop(),
    "tokens_3_2_switches_1": with_switches(tokens(3, 2), 1),
    "tokens_3_2_switches_2": with_switches(tokens(3, 2), 2),
    "tokens_3_2_switches_3": with_switches(tokens(3, 2), 3),
    "pigeonhole_3_2_switches_3": with_switches(pigeonhole(3, 2), 3),
    "no_passing_3_switches_3": with_switches(no_passing(3), 3),
    "paired_flips_switches_3": with_switches(paired_flips(), 3, cost=0),
}


def main():
    for name, p in INSTANCES.items():
        with open(OUT / f"{name}.json", "w") as f:
            f.write("{\n")
            f.write(f'  "fluents": {json.dumps(p["fluents"])},\n')
            f.write('  "actions": [\n')
            f.write(",\n".join("    " + json.dumps(a) for a in p["actions"]))
            f.write("\n  ],\n")
            f.write(f'  "init": {json.dumps(p["init"])},\n')
            f.write(f'  "goal": {json.dumps(p["goal"])}\n')
            f.write("}\n")


if __name__ == "__main__":
    main()
