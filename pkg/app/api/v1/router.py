from fastapi import APIRouter
from app.api.v1.endpoints import codes, tables, tower

api_router = APIRouter()

api_router.include_router(codes.router, tags=["codes"])
api_router.include_router(tables.router, tags=["tables"])
api_router.include_router(tower.router, tags=["tower"])
