"""Common initialization and sidebar for the Streamlit explorer."""
import logging
from typing import Dict, List, Optional, Tuple

import streamlit as st

from modules.config_loader import ConfigLoader
from modules.pattern_engine import DistributionMatrix, distribution_matrix, level_sizes

logger = logging.getLogger(__name__)

MAX_LENGTH = 10


def init_page_config(page_title: str = "Comtet explorer", page_icon: str = "🧮"):
    """Initialize Streamlit page configuration.

    Args:
        page_title: Title for the page
        page_icon: Icon emoji for the page
    """
    try:
        st.set_page_config(
            page_title=page_title,
            page_icon=page_icon,
            layout="wide",
            initial_sidebar_state="expanded"
        )
    except st.errors.StreamlitAPIException:
        # already set
        pass


@st.cache_resource
def get_config_loader():
    """Get cached configuration loader.

    Returns:
        ConfigLoader instance or None if initialization fails
    """
    try:
        return ConfigLoader()
    except Exception as e:
        logger.error(f"Config loader failed: {e}")
        st.error(f"Failed to load configurations: {e}")
        return None


@st.cache_data
def cached_matrix(n: int, patterns: str) -> DistributionMatrix:
    return distribution_matrix(n, patterns)


@st.cache_data
def cached_level_sizes(patterns: str, nmax: int) -> List[int]:
    return level_sizes(patterns, nmax)


def class_options(config_loader: Optional[ConfigLoader]) -> Dict[str, List[str]]:
    """Pattern classes from patterns.yaml grouped for the sidebar picker."""
    if not config_loader:
        return {}
    classes = config_loader.get_classes()
    return {
        "Single patterns of length 3": list(classes.get("catalan", [])),
        "Pairs of length 3": list(classes.get("pairs", [])),
        "Schröder classes": list(classes.get("schroder", [])),
    }


def render_sidebar(config_loader: Optional[ConfigLoader] = None) -> Tuple[Optional[str], int]:
    """Render the class picker and the length slider.

    Args:
        config_loader: ConfigLoader instance supplying the class catalog

    Returns:
        (pattern set text or None, length n)
    """
    st.sidebar.title("🧮 Comtet explorer")
    st.sidebar.markdown("---")

    options = class_options(config_loader)
    patterns = None
    if options:
        group = st.sidebar.selectbox("Family", list(options))
        patterns = st.sidebar.selectbox("Pattern class", options[group])
    custom = st.sidebar.text_input("Or type patterns", placeholder="e.g. 2413,3142")
    if custom.strip():
        patterns = custom.strip()
    n = st.sidebar.slider("Length n", min_value=1, max_value=MAX_LENGTH, value=5)

    st.sidebar.markdown("---")
    st.sidebar.subheader("About")
    st.sidebar.info(
        "Joint distribution of the initial ascending run (iar) and the number of "
        "components (comp) over pattern-avoiding permutations."
    )
    return patterns, n


def check_environment_vars(config_loader: ConfigLoader) -> tuple[bool, list[str]]:
    """Check which optional environment variables are set.

    Returns:
        Tuple of (all_set, unset_vars)
    """
    if not config_loader:
        return False, ["ConfigLoader not initialized"]
    return config_loader.validate_env_vars()


def show_env_var_info(unset_vars: list[str]):
    with st.expander("Unset optional environment variables"):
        for var in unset_vars:
            st.write(f"- `{var}`")
        st.info("Defaults from config/ are used. See `.env.example` for overrides.")
