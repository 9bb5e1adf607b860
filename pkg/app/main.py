import logging
import os

import sentry_sdk
from dotenv import load_dotenv
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.celery_app.config import CeleryConfig
from app.routers.design import router as design_router
from app.routers.registers import router as registers_router
from app.routers.tasks import router as tasks_router
from app.routers.tomography import router as tomography_router
from app.settings import get_settings

load_dotenv()  # Load environment variables from .env file

logger = logging.getLogger(__name__)


if os.getenv("TESTING") != "true":
    SENTRY_DSN = os.getenv("SENTRY_DSN")

    if SENTRY_DSN:
        sentry_sdk.init(
            dsn=SENTRY_DSN,  # Sentry DSN from environment variable
            send_default_pii=False,
        )


def create_app() -> FastAPI:
    app = FastAPI(
        title="Star Register Tomography API",
        description="Readout design and tomography simulation for star-topology spin registers",
        version="1.0.0",
    )

    # Configure CORS
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],  # In production, replace with specific origins
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    # Include routers
    app.include_router(registers_router)
    app.include_router(design_router)
    app.include_router(tomography_router)
    app.include_router(tasks_router)

    @app.get("/")
    async def root():
        return {"message": "Welcome to the Star Register Tomography API"}

    @app.get("/health")
    async def health_check():
        """Health check endpoint for Docker healthcheck and monitoring"""
        try:
            settings = get_settings()
            return {
                "status": "healthy",
                "settings": settings.source,
                "broker": CeleryConfig.broker_url,
            }
        except Exception as e:
            logger.error(f"Health check degraded: {str(e)}")
            return {"status": "degraded", "error": str(e), "broker": CeleryConfig.broker_url}

    return app


# Create the app instance
app = create_app()
