import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'pmto_lab.settings')
django.setup()
