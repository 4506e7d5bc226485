import hypothesis.strategies as st
import numpy as np

max_examples = 15
slow_max_examples = 5
deadline = None

seeds = st.integers(min_value=0, max_value=2**32 - 1)
degrees = st.integers(min_value=3, max_value=12)
small_degrees = st.integers(min_value=3, max_value=7)

# prisms must be longer than sqrt(2)
prism_lengths = st.floats(min_value=1.5, max_value=20.0, allow_nan=False, allow_infinity=False)

coordinates = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False, allow_infinity=False)
offsets = st.tuples(coordinates, coordinates, coordinates)

models = st.sampled_from(["cube", "frame_torus", "octopus", "octopus_cubes"])
strategies = st.sampled_from(["bfs", "dfs", "steepest"])

# interior angles away from the rectilinear ones
angles = st.floats(min_value=1e-3, max_value=2 * np.pi - 1e-3, allow_nan=False)

# probability of a rectilinear turn when sampling links
greens = st.sampled_from([0.0, 0.5])
