# main.py
from __future__ import annotations

from typing import Any, Dict

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from API.routes import router as matching_router
from Core import constants
from Core.config import settings_summary

app = FastAPI(
    title="Graph Matching Lab API",
    description="Sampling, seedless matching and threshold evaluation for correlated Gaussian-attributed Erdos-Renyi graphs.",
    version="0.1.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.get("/health")
def health_check() -> Dict[str, Any]:
    """Service status and the effective settings."""
    return {
        "status": "ok",
        "service": "Graph Matching Lab API",
        "version": "0.1.0",
        "schema_version": constants.SCHEMA_VERSION,
        "settings": settings_summary(),
    }


app.include_router(matching_router)
