"""Comtet explorer - Streamlit application."""
import traceback

import pandas as pd
import streamlit as st

from modules.app_common import (
    cached_level_sizes,
    cached_matrix,
    check_environment_vars,
    get_config_loader,
    init_page_config,
    render_sidebar,
    show_env_var_info,
)
from modules.errors import CombinatoricsError, UnsupportedPatternError
from modules.genfun import closed_form
from modules.pattern_engine import gamma_counts, matrix_properties
from modules.verification import list_checks, run_check
from modules.visualizations import (
    create_distribution_heatmap,
    create_gamma_chart,
    create_level_size_chart,
)

init_page_config(page_title="Comtet explorer", page_icon="🧮")

config_loader = get_config_loader()
patterns, n = render_sidebar(config_loader)

st.title("🧮 Refined Wilf-equivalences by iar and comp")
st.markdown("Distribution of the initial ascending run and the number of components "
            "over permutations avoiding a pattern class.")
st.markdown("---")

if not config_loader:
    st.error("Configuration loader not initialized. Please check your config files.")
    st.stop()

all_set, unset = check_environment_vars(config_loader)
if not all_set:
    show_env_var_info(unset)

if not patterns:
    st.info("Pick a pattern class in the sidebar.")
    st.stop()

try:
    matrix = cached_matrix(n, patterns)
except CombinatoricsError as e:
    st.error(f"❌ {e}")
    st.stop()

col1, col2, col3 = st.columns(3)
with col1:
    st.metric("|S_n(P)|", matrix.total)
with col2:
    st.metric("Pattern class", matrix.patterns)
with col3:
    st.metric("n", n)

st.header("Distribution matrix")
properties = sorted(matrix_properties(matrix))
if properties:
    st.write(" ".join(f"`{name}`" for name in properties))
left, right = st.columns(2)
with left:
    st.dataframe(matrix.to_dataframe(), use_container_width=True)
with right:
    st.plotly_chart(create_distribution_heatmap(matrix), use_container_width=True)

st.header("Class sizes")
sizes = cached_level_sizes(patterns, n)
sizes_df = pd.DataFrame({'n': range(1, n + 1), 'count': sizes[1:]})
try:
    reference = [int(c) for c in closed_form(patterns, n).at_ones()[1:]]
except UnsupportedPatternError:
    reference = None
st.plotly_chart(create_level_size_chart(sizes_df, reference), use_container_width=True)

with st.expander("Gamma coefficients of the descent polynomial"):
    try:
        gamma = gamma_counts(n, patterns)
        st.plotly_chart(create_gamma_chart(gamma, n), use_container_width=True)
    except CombinatoricsError as e:
        st.info(f"No gamma expansion at n={n}: {e}")

st.markdown("---")
st.header("Run a check")
names = [name for name, _ in list_checks()]
descriptions = dict(list_checks())
chosen = st.selectbox("Check", names, format_func=lambda name: f"{name}: {descriptions[name]}")

if st.button("▶️ Run check", type="primary"):
    try:
        with st.spinner(f"Running {chosen}..."):
            report = run_check(chosen, config_loader)
        if report.verdict == 'pass':
            st.success(report.summary())
        elif report.verdict == 'finding':
            st.warning(report.summary())
        else:
            st.error(report.summary())
        if report.details:
            with st.expander("Details"):
                for line in report.details:
                    st.write(f"- {line}")
    except Exception as e:
        st.error(f"❌ Error while running {chosen}: {e}")
        with st.expander("Show error details"):
            st.code(traceback.format_exc())
