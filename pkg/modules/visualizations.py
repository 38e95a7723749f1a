"""Plotly charts for distribution matrices, class sizes and gamma vectors."""
from typing import Literal, Optional, Sequence

import pandas as pd
import plotly.graph_objects as go

from modules.pattern_engine import DistributionMatrix

ColorScale = Literal['Blues', 'Viridis', 'Greens']


def _empty_figure(message: str) -> go.Figure:
    fig = go.Figure()
    fig.add_annotation(
        text=message,
        xref="paper", yref="paper",
        x=0.5, y=0.5, showarrow=False,
        font=dict(size=16)
    )
    return fig


def create_distribution_heatmap(
    matrix: Optional[DistributionMatrix],
    colorscale: ColorScale = 'Blues',
    show_values: bool = True
) -> go.Figure:
    """Heatmap of M_n(P): rows iar = 1..n, columns comp = 1..n.

    Args:
        matrix: Distribution matrix, or None
        colorscale: Plotly colour scale
        show_values: Write each count inside its cell

    Returns:
        Plotly Figure object
    """
    if matrix is None or matrix.n == 0:
        return _empty_figure("No permutations of this length")

    labels = list(range(1, matrix.n + 1))
    fig = go.Figure(go.Heatmap(
        z=matrix.as_lists(),
        x=labels,
        y=labels,
        colorscale=colorscale,
        text=matrix.as_lists() if show_values else None,
        texttemplate="%{text}" if show_values else None,
        hovertemplate="iar=%{y}, comp=%{x}: %{z}<extra></extra>",
    ))
    title = f"M_{matrix.n}({matrix.patterns})" if matrix.patterns else f"M_{matrix.n}"
    fig.update_layout(
        title=dict(text=title, font=dict(size=20)),
        xaxis=dict(title="comp", dtick=1, side='top'),
        yaxis=dict(title="iar", dtick=1, autorange='reversed'),
        template='plotly_white',
        height=500,
    )
    return fig


def create_level_size_chart(
    df: pd.DataFrame,
    reference: Optional[Sequence[int]] = None
) -> go.Figure:
    """Bar chart of |S_n(P)| per n, with an optional reference sequence as a line.

    Args:
        df: DataFrame with columns ``n`` and ``count``
        reference: Expected counts for n = 1, 2, ...
    """
    if df.empty:
        return _empty_figure("No sizes computed")

    fig = go.Figure()
    fig.add_trace(go.Bar(
        x=df['n'],
        y=df['count'],
        name='|S_n(P)|',
        hovertemplate="n=%{x}: %{y}<extra></extra>",
    ))
    if reference:
        n_values = list(df['n'])
        fig.add_trace(go.Scatter(
            x=n_values,
            y=[reference[n - 1] if n - 1 < len(reference) else None for n in n_values],
            name='reference',
            mode='lines+markers',
        ))
    fig.update_layout(
        xaxis=dict(title="n", dtick=1),
        yaxis=dict(title="count", type='log'),
        template='plotly_white',
        height=400,
        legend=dict(orientation="h", yanchor="bottom", y=1.02, xanchor="right", x=1),
    )
    return fig


def create_gamma_chart(gamma: Sequence[int], n: int) -> go.Figure:
    """Bar chart of the gamma coefficients of the descent polynomial at length n."""
    if not gamma:
        return _empty_figure("No gamma coefficients")

    fig = go.Figure(go.Bar(
        x=list(range(len(gamma))),
        y=list(gamma),
        marker=dict(color=list(gamma), colorscale='Greens', showscale=False),
        hovertemplate="gamma_%{x}: %{y}<extra></extra>",
    ))
    fig.update_layout(
        title=dict(text=f"gamma vector, n={n}"),
        xaxis=dict(title="j", dtick=1),
        yaxis=dict(title="gamma_j"),
        template='plotly_white',
        height=400,
    )
    return fig
