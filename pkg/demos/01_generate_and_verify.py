"""
Generating problems and grading answers
=======================================

Every environment is a (generator, verifier) pair: the generator builds a
problem at an integer difficulty from a deterministic seed, and the verifier
grades any output string into a reward in [-1, +1].
"""

from adaptenv import Coordinates, default_registry

registry = default_registry()

# The registry knows all sixteen environments by id
print("available environments:")
for env_id in registry.env_ids():
    print(" -", env_id)

# Generation is deterministic in (master_seed, env_id, counter); the same
# coordinates always reproduce the same problem
coords = Coordinates(master_seed=7, env_id="sorting", counter=0)
instance = registry.generate("sorting", difficulty=3, coords=coords)
print()
print(instance.prompt)

# The planted reference answer always verifies as exactly correct
verdict = registry.verify(instance, instance.reference_answer)
print("reference answer:", instance.reference_answer)
print("reference verdict:", verdict.category, verdict.reward)

# A partially sorted answer earns a graded reward; the sorting reward is
# (matching positions / n) ** 10
array = sorted(instance.params["array"])
array[0], array[-1] = array[-1], array[0]
verdict = registry.verify(instance, " ".join(str(v) for v in array))
print("partial answer verdict:", verdict.category, round(verdict.reward, 6))

# Unparseable output is a ParseFailure at reward -1, wrong shape is a
# StructuralViolation at -0.5
print("garbage verdict:", registry.verify(instance, "no idea").reward)
print("wrong length verdict:", registry.verify(instance, "1 2 3").reward)

# Verifiers also understand chat-style wrappers: reasoning before a
# </think> tag is discarded and <answer> tags are unwrapped
wrapped = f"some thinking here\n</think>\n<answer>{instance.reference_answer}</answer>"
print("wrapped verdict:", registry.verify(instance, wrapped).reward)
