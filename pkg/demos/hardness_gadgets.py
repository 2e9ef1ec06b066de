"""The generator side: reduction gadgets and hardness instances.

Shuffle-word membership embeds into alignment as a perfect-alignment
question on a fork-join T-system; a whole machine run embeds into a safe and
sound workflow net whose single acc-labeled transition fires exactly when the
machine accepts.
"""

from fractions import Fraction
from pathlib import Path

from petrialign import (behavioral_class, ShuffleInstance, gen_shuffle_ssystem,
                        gen_shuffle_tsystem, gen_tm_wfnet, make_easy_sound_safe,
                        membership, optimal_alignment, parse_tm, shuffle_member,
                        tm_accepts)
from petrialign.costs import CostFunction

print("== shuffle membership as perfect alignment ==")
words = (("a", "b"), ("c", "d"))
system = gen_shuffle_tsystem(words)
for candidate in (("a", "c", "b", "d"), ("c", "d", "b", "a")):
    direct = shuffle_member(ShuffleInstance(candidate, words))
    via_net = membership(candidate, system)
    print(f"  {','.join(candidate)}: shuffle DP {direct}, net membership {via_net}")

print("== identical words need only one line and more tokens ==")
line = gen_shuffle_ssystem(("a", "b"), 2)
print(f"  ab shuffled with itself, 2 tokens: aabb -> "
      f"{membership(('a', 'a', 'b', 'b'), line)}, "
      f"abba -> {membership(('a', 'b', 'b', 'a'), line)}")

print("== easy-soundness skip gadget ==")
base = gen_shuffle_tsystem([("a",)])
swapped = type(base)(base.net, base.final, base.initial)   # final unreachable
patched, record = make_easy_sound_safe(swapped, Fraction(3))
costs = CostFunction(labels=dict(patched.net.labels),
                     model_overrides=dict(record.cost_overrides))
result = optimal_alignment((), patched, costs)
print(f"  added {record.transitions[0]} at cost {record.cost_overrides[record.transitions[0]]}; "
      f"aligning the empty trace now costs {result.cost}")

print("== machine run as a workflow net ==")
machine = parse_tm(Path(__file__).with_name("scanner.tm").read_text())
for word in (("a", "a"), ("a", "b")):
    system, trace = gen_tm_wfnet(machine, word)
    cost = optimal_alignment(trace, system).cost
    behavior = behavioral_class(system, state_budget=100_000)
    print(f"  input {''.join(word)}: accepts={tm_accepts(machine, word)}, "
          f"align(acc)={cost}, net sound={behavior.sound} safe={behavior.safe}")
