from app.routers.design import router as design_router
from app.routers.registers import router as registers_router
from app.routers.tasks import router as tasks_router
from app.routers.tomography import router as tomography_router
